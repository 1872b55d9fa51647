#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "qml/syntax.hpp"

namespace qml {

Natural bound_length(const Natural& c, EncodingMode mode) {
  if (c == 0) return 1;
  if (mode == EncodingMode::Unary) return c;
  return Natural(boost::multiprecision::msb(c) + 1);
}

namespace {

struct Measures {
  Natural size;
  unsigned depth;
  Natural cap;
};

class Measurer {
 public:
  explicit Measurer(EncodingMode mode) : mode_(mode) {}

  const Measures& of(const Formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    Measures m{1, 0, 0};
    switch (f.op()) {
      case Op::Atom:
        break;
      case Op::And: {
        Measures l = of(f.lhs());
        const Measures& r = of(f.rhs());
        m = {1 + l.size + r.size, std::max(l.depth, r.depth), std::max(l.cap, r.cap)};
        break;
      }
      case Op::Neg: {
        const Measures& c = of(f.child());
        m = {1 + c.size, c.depth, c.cap};
        break;
      }
      case Op::Diamond: {
        const Measures& c = of(f.child());
        m = {1 + c.size, c.depth + 1, c.cap};
        break;
      }
      case Op::CountLeq: {
        const Measures& c = of(f.child());
        m = {1 + c.size + bound_length(f.bound(), mode_), c.depth, std::max(c.cap, f.bound())};
        break;
      }
    }
    return memo_.emplace(f.identity(), std::move(m)).first->second;
  }

 private:
  EncodingMode mode_;
  std::unordered_map<const void*, Measures> memo_;
};

void post_order(const Formula& f, std::unordered_set<Formula, FormulaHash>& seen,
                std::unordered_set<const void*>& visited, std::vector<Formula>& out) {
  if (!visited.insert(f.identity()).second) return;
  switch (f.op()) {
    case Op::Atom:
      break;
    case Op::And:
      post_order(f.lhs(), seen, visited, out);
      post_order(f.rhs(), seen, visited, out);
      break;
    default:
      post_order(f.child(), seen, visited, out);
  }
  if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

FormulaMetrics metrics(const Formula& f, EncodingMode mode) {
  Measurer m(mode);
  const Measures& r = m.of(f);
  return {r.size, subformulas(f).size(), r.depth, r.cap};
}

std::vector<Formula> subformulas(const Formula& f) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::unordered_set<const void*> visited;
  std::vector<Formula> out;
  post_order(f, seen, visited, out);
  return out;
}

unsigned modal_depth(const Formula& f) { return Measurer(EncodingMode::Binary).of(f).depth; }

Natural capacity(const Formula& f) { return Measurer(EncodingMode::Binary).of(f).cap; }

}  // namespace qml
