#include "qml/sat_constant.hpp"

#include <algorithm>
#include <stdexcept>

#include "qml/cdcl.hpp"
#include "qml/check.hpp"
#include "qml/closure.hpp"
#include "qml/syntax.hpp"

namespace qml {

namespace {

using sat::Lit;

struct Template {
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::size_t>> children;
};

Template complete_tree(std::size_t branching, std::size_t depth) {
  Template t;
  t.parent.push_back(0);
  t.children.emplace_back();
  std::vector<std::size_t> frontier{0};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<std::size_t> next;
    for (std::size_t u : frontier)
      for (std::size_t j = 0; j < branching; ++j) {
        std::size_t v = t.parent.size();
        t.parent.push_back(u);
        t.children.emplace_back();
        t.children[u].push_back(v);
        next.push_back(v);
      }
    frontier = std::move(next);
  }
  return t;
}

class Grounder {
 public:
  Grounder(const Closure& cl, const Template& tp, std::size_t objects, std::size_t max_worlds)
      : cl_(cl), tp_(tp), k_(objects) {
    true_ = sat::pos(s_.new_var());
    s_.add_clause({true_});
    existence(max_worlds);
    lits_.assign(tp_.parent.size() * k_ * cl_.size(), true_);
    for (std::size_t s = 0; s < cl_.size(); ++s)
      for (std::size_t u = 0; u < tp_.parent.size(); ++u) encode(u, s);
    s_.add_clause({lit(0, 0, cl_.root())});
  }

  bool solve() { return s_.solve() == sat::Result::Sat; }

  SatWitness decode() const {
    KripkeModel m;
    std::vector<std::size_t> rename(tp_.parent.size(), SIZE_MAX);
    std::vector<std::size_t> order;
    for (std::size_t u = 0; u < tp_.parent.size(); ++u)
      if (exists(u)) {
        rename[u] = order.size();
        order.push_back(u);
      }
    for (std::size_t i = 0; i < order.size(); ++i) m.worlds.push_back(default_world_name(i));
    for (std::size_t u : order)
      if (u != 0) m.edges.emplace_back(rename[tp_.parent[u]], rename[u]);
    for (std::size_t a = 0; a < k_; ++a) m.objects.push_back(default_object_name(a));
    ObjectSet full(k_);
    full.set();
    m.domain.assign(order.size(), full);
    for (std::size_t s = 0; s < cl_.size(); ++s) {
      if (cl_.op(s) != Op::Atom) continue;
      auto& ext = m.interp[cl_.predicate(s)];
      ext.assign(order.size(), ObjectSet(k_));
      for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t a = 0; a < k_; ++a)
          if (s_.value_lit(lit(order[i], a, s))) ext[i].set(a);
    }
    return {std::move(m), 0, 0};
  }

 private:
  Lit false_() const { return sat::negate(true_); }
  Lit fresh() { return sat::pos(s_.new_var()); }
  Lit& lit(std::size_t u, std::size_t a, std::size_t s) { return lits_[(u * k_ + a) * cl_.size() + s]; }
  Lit lit(std::size_t u, std::size_t a, std::size_t s) const { return lits_[(u * k_ + a) * cl_.size() + s]; }
  bool exists(std::size_t u) const { return u == 0 || s_.value_lit(exist_[u]); }

  Lit mk_and(Lit a, Lit b) {
    if (a == false_() || b == false_()) return false_();
    if (a == true_) return b;
    if (b == true_) return a;
    Lit v = fresh();
    s_.add_clause({sat::negate(v), a});
    s_.add_clause({sat::negate(v), b});
    s_.add_clause({v, sat::negate(a), sat::negate(b)});
    return v;
  }

  Lit mk_or(const std::vector<Lit>& xs) {
    std::vector<Lit> live;
    for (Lit x : xs) {
      if (x == true_) return true_;
      if (x != false_()) live.push_back(x);
    }
    if (live.empty()) return false_();
    if (live.size() == 1) return live[0];
    Lit v = fresh();
    std::vector<Lit> big{sat::negate(v)};
    for (Lit x : live) {
      big.push_back(x);
      s_.add_clause({v, sat::negate(x)});
    }
    s_.add_clause(big);
    return v;
  }

  void existence(std::size_t max_worlds) {
    const std::size_t n = tp_.parent.size();
    exist_.assign(n, true_);
    for (std::size_t u = 1; u < n; ++u) exist_[u] = fresh();
    for (std::size_t u = 1; u < n; ++u) {
      if (tp_.parent[u] != 0) s_.add_clause({sat::negate(exist_[u]), exist_[tp_.parent[u]]});
    }
    for (std::size_t u = 0; u < n; ++u) {
      const auto& ch = tp_.children[u];
      for (std::size_t j = 1; j < ch.size(); ++j) s_.add_clause({sat::negate(exist_[ch[j]]), exist_[ch[j - 1]]});
    }
    if (max_worlds == 0) throw std::invalid_argument("max_worlds must be at least 1");
    const std::size_t limit = max_worlds - 1;  // non-root worlds
    if (n - 1 <= limit) return;
    // Sequential counter: at most `limit` of exist_[1..n-1].
    if (limit == 0) {
      for (std::size_t u = 1; u < n; ++u) s_.add_clause({sat::negate(exist_[u])});
      return;
    }
    std::vector<Lit> prev(limit, false_());
    for (std::size_t u = 1; u < n; ++u) {
      Lit x = exist_[u];
      std::vector<Lit> cur(limit);
      for (std::size_t j = 0; j < limit; ++j) cur[j] = fresh();
      s_.add_clause({sat::negate(x), cur[0]});
      for (std::size_t j = 0; j < limit; ++j) {
        if (prev[j] != false_()) s_.add_clause({sat::negate(prev[j]), cur[j]});
        if (j > 0 && prev[j - 1] != false_()) s_.add_clause({sat::negate(x), sat::negate(prev[j - 1]), cur[j]});
      }
      if (prev[limit - 1] != false_()) s_.add_clause({sat::negate(x), sat::negate(prev[limit - 1])});
      prev = std::move(cur);
    }
  }

  // At-least-j indicators over xs, j = 1..upto, with full equivalence.
  std::vector<Lit> at_least(const std::vector<Lit>& xs, std::size_t upto) {
    std::vector<Lit> r(upto + 1, false_());
    r[0] = true_;
    for (Lit x : xs) {
      std::vector<Lit> next(upto + 1, false_());
      next[0] = true_;
      for (std::size_t j = 1; j <= upto; ++j) next[j] = mk_or({r[j], mk_and(r[j - 1], x)});
      r = std::move(next);
    }
    return r;
  }

  void encode(std::size_t u, std::size_t s) {
    switch (cl_.op(s)) {
      case Op::Atom:
        for (std::size_t a = 0; a < k_; ++a) lit(u, a, s) = fresh();
        return;
      case Op::Neg:
        for (std::size_t a = 0; a < k_; ++a) lit(u, a, s) = sat::negate(lit(u, a, cl_.child(s)));
        return;
      case Op::And:
        for (std::size_t a = 0; a < k_; ++a) lit(u, a, s) = mk_and(lit(u, a, cl_.child(s)), lit(u, a, cl_.rhs(s)));
        return;
      case Op::Diamond:
        for (std::size_t a = 0; a < k_; ++a) {
          std::vector<Lit> options;
          for (std::size_t c : tp_.children[u]) options.push_back(mk_and(exist_[c], lit(c, a, cl_.child(s))));
          lit(u, a, s) = mk_or(options);
        }
        return;
      case Op::CountLeq: {
        Lit g = true_;
        if (cl_.bound(s) < k_) {
          std::size_t c = static_cast<std::size_t>(cl_.bound(s));
          std::vector<Lit> xs;
          for (std::size_t a = 0; a < k_; ++a) xs.push_back(lit(u, a, cl_.child(s)));
          g = sat::negate(at_least(xs, c + 1)[c + 1]);
        }
        for (std::size_t a = 0; a < k_; ++a) lit(u, a, s) = g;
        return;
      }
    }
  }

  const Closure& cl_;
  const Template& tp_;
  std::size_t k_;
  sat::Solver s_;
  Lit true_ = 0;
  std::vector<Lit> exist_;
  std::vector<Lit> lits_;
};

std::size_t template_size(std::size_t branching, std::size_t depth, std::size_t clamp) {
  std::size_t total = 0, level = 1;
  for (std::size_t d = 0; d <= depth; ++d) {
    total += level;
    if (total >= clamp) return clamp;
    level *= branching;
  }
  return total;
}

}  // namespace

SearchBounds default_constant_bounds(const Formula& phi) {
  FormulaMetrics mt = metrics(phi, EncodingMode::Binary);
  SearchBounds b;
  b.max_depth = mt.modal_depth;
  b.max_branching = std::max<std::size_t>(mt.n_sub, 1);
  Natural objects = Natural(mt.n_sub) * (mt.capacity + 1);
  b.max_objects = objects > 64 ? 64 : static_cast<std::size_t>(objects);
  b.max_worlds = template_size(b.max_branching, b.max_depth, 4096);
  return b;
}

std::optional<SatWitness> sat_constant(const Formula& phi, const SearchBounds& bounds) {
  Closure cl(phi);
  const std::size_t depth = std::min<std::size_t>(bounds.max_depth, cl.modal_depth());
  const std::size_t max_b = depth == 0 ? 1 : std::max<std::size_t>(bounds.max_branching, 1);
  for (std::size_t k = 1; k <= bounds.max_objects; ++k) {
    auto attempt = [&](std::size_t b) -> std::optional<SatWitness> {
      Template tp = complete_tree(b, depth);
      Grounder g(cl, tp, k, bounds.max_worlds);
      if (!g.solve()) return std::nullopt;
      return g.decode();
    };
    // Satisfiability is monotone in the branching, so the widest template
    // decides; narrower ones only give smaller witnesses.
    auto wide = attempt(max_b);
    if (!wide) continue;
    std::optional<SatWitness> found;
    for (std::size_t b = 1; b < max_b && !found; ++b) found = attempt(b);
    if (!found) found = std::move(wide);
    if (!check(found->model, found->world, found->object, phi))
      throw std::logic_error("sat_constant witness rejected by the model checker");
    return found;
  }
  return std::nullopt;
}

}  // namespace qml
