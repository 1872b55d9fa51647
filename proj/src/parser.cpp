#include <cctype>
#include <memory>
#include <optional>
#include <set>

#include "qml/syntax.hpp"

namespace qml {

namespace {

// ── Lexer ──

enum class Tok {
  Not, And, Or, Implies, Iff, Diamond, Box, LParen, RParen, LBracket, RBracket,
  Leq, Geq, Eq, Ident, Number, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (starts("<->")) { out.push_back({Tok::Iff, "<->", at}); i += 3; continue; }
    if (starts("<>")) { out.push_back({Tok::Diamond, "<>", at}); i += 2; continue; }
    if (starts("<=")) { out.push_back({Tok::Leq, "<=", at}); i += 2; continue; }
    if (starts(">=")) { out.push_back({Tok::Geq, ">=", at}); i += 2; continue; }
    if (starts("->")) { out.push_back({Tok::Implies, "->", at}); i += 2; continue; }
    if (starts("[]")) { out.push_back({Tok::Box, "[]", at}); i += 2; continue; }
    switch (c) {
      case '~': out.push_back({Tok::Not, "~", at}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", at}); ++i; continue;
      case '|': out.push_back({Tok::Or, "|", at}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", at}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", at}); ++i; continue;
      case '[': out.push_back({Tok::LBracket, "[", at}); ++i; continue;
      case ']': out.push_back({Tok::RBracket, "]", at}); ++i; continue;
      case '=': out.push_back({Tok::Eq, "=", at}); ++i; continue;
      case '-':
        if (i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))
          throw ParseError("negative bound literal", at);
        break;
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, std::string(s.substr(at, i - at)), at});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(at, i - at)), at});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool valid_predicate(const std::string& id) {
  auto all_digits = [](std::string_view v) {
    if (v.empty()) return false;
    for (char c : v)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (id.size() >= 2 && id[0] == 'P' && all_digits(std::string_view(id).substr(1))) return true;
  if (id.size() >= 3 && id[1] == '_' && (id[0] == 'E' || id[0] == 'Q' || id[0] == 'S' || id[0] == 'T'))
    return true;
  return false;
}

// ── Surface tree ──

enum class S { Atom, Not, And, Or, Implies, Iff, Diamond, Box, Exists, Forall, Leq, Geq, Eq };

struct Surface {
  S kind;
  std::string predicate;
  Natural bound;
  std::unique_ptr<Surface> a, b;
};

using SurfacePtr = std::unique_ptr<Surface>;

SurfacePtr make(S kind, SurfacePtr a = nullptr, SurfacePtr b = nullptr) {
  auto n = std::make_unique<Surface>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SurfacePtr parse_all() {
    auto f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  void expect_variable() {
    if (peek().kind != Tok::Ident || peek().text != "x") fail("expected variable x");
    ++pos_;
  }

  SurfacePtr parse_iff() {
    auto l = parse_implies();
    while (peek().kind == Tok::Iff) {
      ++pos_;
      l = make(S::Iff, std::move(l), parse_implies());
    }
    return l;
  }

  SurfacePtr parse_implies() {
    auto l = parse_or();
    if (peek().kind == Tok::Implies) {
      ++pos_;
      return make(S::Implies, std::move(l), parse_implies());
    }
    return l;
  }

  SurfacePtr parse_or() {
    auto l = parse_and();
    while (peek().kind == Tok::Or) {
      ++pos_;
      l = make(S::Or, std::move(l), parse_and());
    }
    return l;
  }

  SurfacePtr parse_and() {
    auto l = parse_unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      l = make(S::And, std::move(l), parse_unary());
    }
    return l;
  }

  SurfacePtr parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: ++pos_; return make(S::Not, parse_unary());
      case Tok::Diamond: ++pos_; return make(S::Diamond, parse_unary());
      case Tok::Box: ++pos_; return make(S::Box, parse_unary());
      case Tok::LParen: {
        ++pos_;
        auto f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: return parse_ident();
      default: fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected token '" + t.text + "'");
    }
  }

  SurfacePtr parse_ident() {
    Token t = take();
    if (t.text == "A") {
      expect_variable();
      return make(S::Forall, parse_unary());
    }
    if (t.text == "E") {
      if (peek().kind != Tok::LBracket) {
        expect_variable();
        return make(S::Exists, parse_unary());
      }
      ++pos_;
      S kind;
      switch (peek().kind) {
        case Tok::Leq: kind = S::Leq; break;
        case Tok::Geq: kind = S::Geq; break;
        case Tok::Eq: kind = S::Eq; break;
        default: fail("expected <=, >= or =");
      }
      ++pos_;
      if (peek().kind != Tok::Number) fail("expected a non-negative decimal bound");
      Natural c(take().text);
      expect(Tok::RBracket, "']'");
      expect_variable();
      auto n = make(kind, parse_unary());
      n->bound = std::move(c);
      return n;
    }
    if (t.text == "x") {
      --pos_;
      fail("variable x outside an atom");
    }
    if (!valid_predicate(t.text)) {
      --pos_;
      fail("invalid predicate symbol '" + t.text + "'");
    }
    expect(Tok::LParen, "'(' after predicate");
    expect_variable();
    expect(Tok::RParen, "')'");
    auto n = make(S::Atom);
    n->predicate = t.text;
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ── Desugaring ──

enum class Polarity { Pos, Neg, Mixed };

Polarity flip(Polarity p) {
  if (p == Polarity::Pos) return Polarity::Neg;
  if (p == Polarity::Neg) return Polarity::Pos;
  return Polarity::Mixed;
}

void surface_predicates(const Surface& s, std::vector<std::string>& out) {
  if (s.kind == S::Atom) out.push_back(s.predicate);
  if (s.a) surface_predicates(*s.a, out);
  if (s.b) surface_predicates(*s.b, out);
}

class Desugarer {
 public:
  explicit Desugarer(std::vector<std::string> taken) : taken_(std::move(taken)) {}

  Formula run(const Surface& root) {
    Formula body = go_top(root);
    if (definitions_.empty()) return body;
    std::vector<Formula> parts{body};
    parts.insert(parts.end(), definitions_.begin(), definitions_.end());
    return Formula::conj_all(parts);
  }

 private:
  // Root-level conjuncts: ∃[=c] is expanded to its two-conjunct form there.
  Formula go_top(const Surface& s) {
    if (s.kind == S::Eq) return two_conjunct(s);
    if (s.kind != S::And) return go(s, Polarity::Pos, 0);
    Formula l = go_top(*s.a);
    return Formula::conj(l, go_top(*s.b));
  }

  Formula two_conjunct(const Surface& s) {
    Formula body = go(*s.a, Polarity::Mixed, 0);
    Formula upper = Formula::count_leq(s.bound, body);
    if (s.bound == 0) return upper;
    return Formula::conj(upper, Formula::neg(Formula::count_leq(s.bound - 1, body)));
  }

  std::string fresh() {
    std::string q = fresh_symbol("Q_", taken_);
    taken_.push_back(q);
    return q;
  }

  Formula go(const Surface& s, Polarity pol, unsigned depth) {
    switch (s.kind) {
      case S::Atom: return Formula::atom(s.predicate);
      case S::Not: return Formula::neg(go(*s.a, flip(pol), depth));
      // Operands are desugared left to right so fresh symbols are numbered
      // in reading order.
      case S::And: {
        Formula l = go(*s.a, pol, depth);
        return Formula::conj(l, go(*s.b, pol, depth));
      }
      case S::Or: {
        Formula l = go(*s.a, pol, depth);
        return Formula::disj(l, go(*s.b, pol, depth));
      }
      case S::Implies: {
        Formula l = go(*s.a, flip(pol), depth);
        return Formula::implies(l, go(*s.b, pol, depth));
      }
      case S::Iff: {
        Formula l = go(*s.a, Polarity::Mixed, depth);
        return Formula::iff(l, go(*s.b, Polarity::Mixed, depth));
      }
      case S::Diamond: return Formula::diamond(go(*s.a, pol, depth + 1));
      case S::Box: return Formula::box(go(*s.a, pol, depth + 1));
      case S::Exists: return Formula::exists(go(*s.a, pol, depth));
      case S::Forall: return Formula::forall(go(*s.a, pol, depth));
      case S::Leq: return Formula::count_leq(s.bound, go(*s.a, flip(pol), depth));
      case S::Geq: return Formula::count_geq(s.bound, go(*s.a, pol, depth));
      case S::Eq: {
        Formula body = go(*s.a, Polarity::Mixed, depth);
        std::string q = fresh();
        if (pol == Polarity::Pos) return desugar_count_eq(s.bound, body, q);
        Formula qa = Formula::atom(q);
        definitions_.push_back(Formula::box_upto(Formula::forall(Formula::iff(qa, body)), depth));
        Formula upper = Formula::count_leq(s.bound, qa);
        if (s.bound == 0) return upper;
        return Formula::conj(upper, Formula::neg(Formula::count_leq(s.bound - 1, qa)));
      }
    }
    throw std::logic_error("unreachable");
  }

  std::vector<std::string> taken_;
  std::vector<Formula> definitions_;
};

// ── Printer ──

enum class Ctx { Top, AndLeft, AndRight, Prefix };

void print_into(const Formula& f, Ctx ctx, std::string& out) {
  switch (f.op()) {
    case Op::Atom:
      out += f.predicate();
      out += "(x)";
      return;
    case Op::Neg:
      out += '~';
      print_into(f.child(), Ctx::Prefix, out);
      return;
    case Op::Diamond:
      out += "<>";
      print_into(f.child(), Ctx::Prefix, out);
      return;
    case Op::CountLeq:
      out += "E[<=";
      out += f.bound().str();
      out += "] x ";
      print_into(f.child(), Ctx::Prefix, out);
      return;
    case Op::And: {
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

}  // namespace

Formula parse(std::string_view text, EncodingMode) {
  Parser p(lex(text));
  SurfacePtr tree = p.parse_all();
  std::vector<std::string> taken;
  surface_predicates(*tree, taken);
  return Desugarer(std::move(taken)).run(*tree);
}

std::string print(const Formula& f) {
  std::string out;
  print_into(f, Ctx::Top, out);
  return out;
}

Formula desugar_count_eq(const Natural& c, const Formula& body, const std::string& fresh) {
  if (mentions_predicate(body, fresh)) throw SymbolCollision(fresh);
  Formula q = Formula::atom(fresh);
  Formula definition = Formula::forall(Formula::iff(q, body));
  Formula upper = Formula::count_leq(c, q);
  if (c == 0) return Formula::conj(upper, definition);
  return Formula::conj(Formula::conj(upper, Formula::neg(Formula::count_leq(c - 1, q))), definition);
}

}  // namespace qml
