#include "qml/bimodal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>

#include "qml/enumerate.hpp"

namespace qml {

Bimodal Bimodal::var(unsigned index) {
  auto n = std::make_shared<Node>();
  n->op = BOp::Var;
  n->index = index;
  return Bimodal(std::move(n));
}

Bimodal Bimodal::neg(const Bimodal& f) {
  auto n = std::make_shared<Node>();
  n->op = BOp::Neg;
  n->kids = {f};
  return Bimodal(std::move(n));
}

Bimodal Bimodal::conj(const Bimodal& l, const Bimodal& r) {
  auto n = std::make_shared<Node>();
  n->op = BOp::And;
  n->kids = {l, r};
  return Bimodal(std::move(n));
}

Bimodal Bimodal::dia(BOp op, const Bimodal& f) {
  if (op != BOp::DiaH && op != BOp::DiaV && op != BOp::DiaU) throw std::invalid_argument("not a diamond");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->kids = {f};
  return Bimodal(std::move(n));
}

bool operator==(const Bimodal& a, const Bimodal& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.index() != b.index()) return false;
  return a.node_->kids == b.node_->kids;
}

namespace {

// ── Parser ──

class BParser {
 public:
  explicit BParser(std::string_view s) : s_(s) {}

  Bimodal run() {
    Bimodal f = implies();
    skip();
    if (i_ != s_.size()) fail("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw BimodalParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }

  static Bimodal disj(const Bimodal& a, const Bimodal& b) {
    return Bimodal::neg(Bimodal::conj(Bimodal::neg(a), Bimodal::neg(b)));
  }

  Bimodal implies() {
    Bimodal l = disjunction();
    if (eat("->")) return Bimodal::neg(Bimodal::conj(l, Bimodal::neg(implies())));
    return l;
  }

  Bimodal disjunction() {
    Bimodal l = conjunction();
    while (eat("|")) l = disj(l, conjunction());
    return l;
  }

  Bimodal conjunction() {
    Bimodal l = unary();
    while (eat("&")) l = Bimodal::conj(l, unary());
    return l;
  }

  Bimodal unary() {
    skip();
    if (i_ == s_.size()) fail("unexpected end of input");
    if (eat("~")) return Bimodal::neg(unary());
    for (auto [text, op] : {std::pair{"h", BOp::DiaH}, {"v", BOp::DiaV}, {"u", BOp::DiaU}}) {
      const std::string d = std::string("<") + text + ">";
      const std::string b = std::string("[") + text + "]";
      if (eat(d)) return Bimodal::dia(op, unary());
      if (eat(b)) return Bimodal::neg(Bimodal::dia(op, Bimodal::neg(unary())));
    }
    if (eat("(")) {
      Bimodal f = implies();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (s_[i_] == 'p') {
      std::size_t j = i_ + 1;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j == i_ + 1) fail("expected variable index");
      const unsigned idx = static_cast<unsigned>(std::stoul(std::string(s_.substr(i_ + 1, j - i_ - 1))));
      i_ = j;
      return Bimodal::var(idx);
    }
    fail(std::string("unexpected character '") + s_[i_] + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

// ── Printer ──

enum class Ctx { Top, AndLeft, AndRight, Prefix };

void print_into(const Bimodal& f, Ctx ctx, std::string& out) {
  switch (f.op()) {
    case BOp::Var:
      out += 'p';
      out += std::to_string(f.index());
      return;
    case BOp::Neg:
      out += '~';
      print_into(f.child(), Ctx::Prefix, out);
      return;
    case BOp::DiaH:
    case BOp::DiaV:
    case BOp::DiaU:
      out += f.op() == BOp::DiaH ? "<h>" : f.op() == BOp::DiaV ? "<v>" : "<u>";
      print_into(f.child(), Ctx::Prefix, out);
      return;
    case BOp::And: {
      bool wrap = ctx == Ctx::Prefix || ctx == Ctx::AndRight;
      if (wrap) out += '(';
      print_into(f.lhs(), Ctx::AndLeft, out);
      out += " & ";
      print_into(f.rhs(), Ctx::AndRight, out);
      if (wrap) out += ')';
      return;
    }
  }
}

void collect(const Bimodal& f, std::vector<Bimodal>& out) {
  if (f.op() == BOp::And) {
    collect(f.lhs(), out);
    collect(f.rhs(), out);
  } else if (f.op() != BOp::Var) {
    collect(f.child(), out);
  }
  if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
}

using Mask = std::uint32_t;

// sub(φ) with child positions resolved, children first.
struct Instr {
  BOp op;
  unsigned index;
  std::size_t a, b;
};

std::vector<Instr> compile(const Bimodal& phi) {
  const auto subs = subformulas(phi);
  auto pos = [&](const Bimodal& g) {
    return static_cast<std::size_t>(std::find(subs.begin(), subs.end(), g) - subs.begin());
  };
  std::vector<Instr> prog;
  for (const Bimodal& g : subs) {
    Instr in{g.op(), g.op() == BOp::Var ? g.index() : 0, 0, 0};
    if (g.op() == BOp::And) {
      in.a = pos(g.lhs());
      in.b = pos(g.rhs());
    } else if (g.op() != BOp::Var) {
      in.a = pos(g.child());
    }
    prog.push_back(in);
  }
  return prog;
}

// Truth set of the last instruction; `step` handles everything but ∧.
template <typename Step>
Mask evaluate(const std::vector<Instr>& prog, std::vector<Mask>& val, Step&& step) {
  for (std::size_t k = 0; k < prog.size(); ++k) {
    const Instr& in = prog[k];
    val[k] = in.op == BOp::And ? val[in.a] & val[in.b] : step(in, val[in.a]);
  }
  return val.back();
}

}  // namespace

Bimodal parse_bimodal(std::string_view text) { return BParser(text).run(); }

std::string print(const Bimodal& f) {
  std::string out;
  print_into(f, Ctx::Top, out);
  return out;
}

std::vector<Bimodal> subformulas(const Bimodal& f) {
  std::vector<Bimodal> out;
  collect(f, out);
  return out;
}

std::size_t connectives(const Bimodal& f) {
  switch (f.op()) {
    case BOp::Var: return 0;
    case BOp::And: return 1 + connectives(f.lhs()) + connectives(f.rhs());
    default: return 1 + connectives(f.child());
  }
}

unsigned horizontal_depth(const Bimodal& f) {
  switch (f.op()) {
    case BOp::Var: return 0;
    case BOp::And: return std::max(horizontal_depth(f.lhs()), horizontal_depth(f.rhs()));
    case BOp::DiaH: return 1 + horizontal_depth(f.child());
    default: return horizontal_depth(f.child());
  }
}

unsigned variable_count(const Bimodal& f) {
  switch (f.op()) {
    case BOp::Var: return f.index() + 1;
    case BOp::And: return std::max(variable_count(f.lhs()), variable_count(f.rhs()));
    default: return variable_count(f.child());
  }
}

bool uses(const Bimodal& f, BOp op) {
  if (f.op() == op) return true;
  switch (f.op()) {
    case BOp::Var: return false;
    case BOp::And: return uses(f.lhs(), op) || uses(f.rhs(), op);
    default: return uses(f.child(), op);
  }
}

std::vector<Bimodal> enumerate_bimodal(std::size_t max_connectives, unsigned vars, const std::vector<BOp>& ops) {
  std::vector<std::vector<Bimodal>> level(max_connectives + 1);
  for (unsigned v = 0; v < vars; ++v) level[0].push_back(Bimodal::var(v));
  const bool has_and = std::find(ops.begin(), ops.end(), BOp::And) != ops.end();
  for (std::size_t c = 1; c <= max_connectives; ++c) {
    for (BOp op : ops) {
      if (op == BOp::And || op == BOp::Var) continue;
      for (const Bimodal& g : level[c - 1])
        level[c].push_back(op == BOp::Neg ? Bimodal::neg(g) : Bimodal::dia(op, g));
    }
    if (!has_and) continue;
    for (std::size_t a = 0; a < c; ++a)
      for (const Bimodal& l : level[a])
        for (const Bimodal& r : level[c - 1 - a]) level[c].push_back(Bimodal::conj(l, r));
  }
  std::vector<Bimodal> out;
  for (auto& l : level) out.insert(out.end(), l.begin(), l.end());
  return out;
}

bool ku_oracle(const Bimodal& phi, std::size_t max_worlds) {
  if (uses(phi, BOp::DiaV)) throw std::invalid_argument("K_u formulas have no vertical diamond");
  if (max_worlds > 5) throw std::invalid_argument("ku_oracle supports at most 5 worlds");
  const auto prog = compile(phi);
  std::vector<Mask> val(prog.size());
  const unsigned vars = variable_count(phi);
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const Mask all = (Mask{1} << n) - 1;
    const std::uint64_t relations = std::uint64_t{1} << (n * n);
    const std::uint64_t valuations = std::uint64_t{1} << (n * vars);
    for (std::uint64_t r = 0; r < relations; ++r)
      for (std::uint64_t v = 0; v < valuations; ++v) {
        auto step = [&](const Instr& g, Mask m) -> Mask {
          switch (g.op) {
            case BOp::Var: return static_cast<Mask>((v >> (g.index * n)) & all);
            case BOp::Neg: return all & ~m;
            case BOp::DiaU: return m ? all : 0;
            default: {
              Mask out = 0;
              for (std::size_t w = 0; w < n; ++w)
                if ((r >> (w * n)) & m) out |= Mask{1} << w;
              return out;
            }
          }
        };
        if (evaluate(prog, val, step)) return true;
      }
  }
  return false;
}

bool product_oracle(const Bimodal& phi, Vertical vertical, DomainRegime regime, const ProductBounds& bounds) {
  if (uses(phi, BOp::DiaU)) throw std::invalid_argument("product formulas have no universal diamond");
  if (bounds.max_horizontal * bounds.max_vertical > 32 || bounds.max_horizontal > 6)
    throw std::invalid_argument("product bounds too large");
  const auto prog = compile(phi);
  std::vector<Mask> val(prog.size());
  const unsigned vars = variable_count(phi);
  const std::size_t values = std::size_t{1} << vars;  // per present point
  const std::size_t md = horizontal_depth(phi);
  bool found = false;

  for (const TreeShape& shape : enumerate_tree_shapes(bounds.max_horizontal, md, bounds.max_branching)) {
    const std::vector<std::size_t>& parent = shape.parent;
    const std::size_t H = parent.size();
    // A column is a vertical point's trace: per horizontal world either
    // absent (0) or present with valuation code−1.
    std::vector<std::vector<std::size_t>> columns;
    std::vector<std::size_t> col(H, 0);
    std::function<void(std::size_t)> gen = [&](std::size_t u) {
      if (u == H) {
        if (std::all_of(col.begin(), col.end(), [](std::size_t c) { return c == 0; })) return;
        for (std::size_t w = 1; w < H; ++w) {
          const bool here = col[w] != 0, above = col[parent[w]] != 0;
          if (regime == DomainRegime::Constant && here != above) return;
          if (regime == DomainRegime::Expanding && above && !here) return;
          if (regime == DomainRegime::Decreasing && here && !above) return;
        }
        columns.push_back(col);
        return;
      }
      for (std::size_t c = 0; c <= values; ++c) {
        col[u] = c;
        gen(u + 1);
      }
    };
    gen(0);

    for (std::size_t V = 1; V <= bounds.max_vertical && !found; ++V) {
      // Point (u,v) is bit u·V+v.
      std::vector<std::size_t> pick(V, 0);
      std::vector<Mask> var(vars, 0);
      std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t k, std::size_t from) {
        if (found) return;
        if (k == V) {
          Mask present = 0;
          std::fill(var.begin(), var.end(), Mask{0});
          for (std::size_t v = 0; v < V; ++v)
            for (std::size_t u = 0; u < H; ++u) {
              const std::size_t c = columns[pick[v]][u];
              if (c == 0) continue;
              const Mask bit = Mask{1} << (u * V + v);
              present |= bit;
              for (unsigned i = 0; i < vars; ++i)
                if (((c - 1) >> i) & 1) var[i] |= bit;
            }
          const Mask row = (Mask{1} << V) - 1;
          for (std::size_t u = 0; u < H; ++u)
            if (((present >> (u * V)) & row) == 0) return;
          auto step = [&](const Instr& g, Mask m) -> Mask {
            Mask out = 0;
            switch (g.op) {
              case BOp::Var: return var[g.index];
              case BOp::Neg: return present & ~m;
              case BOp::DiaH:
                for (std::size_t w = 1; w < H; ++w)
                  out |= ((m >> (w * V)) & row) << (parent[w] * V);
                return out & present;
              default:
                for (std::size_t u = 0; u < H; ++u) {
                  const Mask r = (m >> (u * V)) & row;
                  for (std::size_t v = 0; v < V; ++v) {
                    const Mask others = vertical == Vertical::S5 ? r : r & ~(Mask{1} << v);
                    if (others) out |= Mask{1} << (u * V + v);
                  }
                }
                return out & present;
            }
          };
          if (evaluate(prog, val, step) & row) found = true;
          return;
        }
        for (std::size_t c = from; c < columns.size() && !found; ++c) {
          pick[k] = c;
          choose(k + 1, c);
        }
      };
      choose(0, 0);
    }
    if (found) return true;
  }
  return false;
}

}  // namespace qml
