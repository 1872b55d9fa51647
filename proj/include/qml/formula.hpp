#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qml {

using Natural = boost::multiprecision::cpp_int;

enum class Op : std::uint8_t { Atom, Neg, And, Diamond, CountLeq };

// Immutable one-variable formula over the five core constructors. Copies
// share structure; equality is structural.
class Formula {
 public:
  static Formula atom(std::string predicate);
  static Formula neg(const Formula& f);
  static Formula conj(const Formula& l, const Formula& r);
  static Formula diamond(const Formula& f);
  static Formula count_leq(Natural bound, const Formula& body);

  // ── Derived forms, expressed in core constructors ──
  static Formula disj(const Formula& l, const Formula& r);
  static Formula implies(const Formula& l, const Formula& r);
  static Formula iff(const Formula& l, const Formula& r);
  static Formula box(const Formula& f);
  static Formula exists(const Formula& body);
  static Formula forall(const Formula& body);
  // ∃[≥c]; for c = 0 this is top(P0).
  static Formula count_geq(const Natural& bound, const Formula& body);
  // P(x) ∨ ¬P(x)
  static Formula top(const std::string& predicate = "P0");
  // Left-nested conjunction; requires a non-empty list.
  static Formula conj_all(const std::vector<Formula>& parts);
  // □^k f
  static Formula box_n(const Formula& f, unsigned k);
  // □^0 f ∧ … ∧ □^m f
  static Formula box_upto(const Formula& f, unsigned m);

  Op op() const;
  const std::string& predicate() const;
  const Natural& bound() const;
  // Operand of Neg, Diamond, CountLeq; left operand of And.
  const Formula& child() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t hash() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op;
  std::string predicate;
  Natural bound;
  std::vector<Formula> kids;
  std::size_t hash;
};

inline Op Formula::op() const { return node_->op; }
inline std::size_t Formula::hash() const { return node_->hash; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Sorted, duplicate-free predicate symbols occurring in f.
std::vector<std::string> predicates_of(const Formula& f);
bool mentions_predicate(const Formula& f, const std::string& predicate);

// First symbol of the form prefix + k (k = 0, 1, …) not in `taken`.
std::string fresh_symbol(const std::string& prefix, const std::vector<std::string>& taken);

class SymbolCollision : public std::invalid_argument {
 public:
  explicit SymbolCollision(const std::string& symbol)
      : std::invalid_argument("symbol already occurs in formula: " + symbol) {}
};

}  // namespace qml
