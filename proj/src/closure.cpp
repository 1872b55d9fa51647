#include "qml/closure.hpp"

#include <algorithm>

#include "qml/syntax.hpp"

namespace qml {

Closure::Closure(const Formula& phi) : nodes_(subformulas(phi)) {
  const std::size_t n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) index_.emplace(nodes_[i], i);
  predicates_ = predicates_of(phi);
  child_.assign(n, 0);
  rhs_.assign(n, 0);
  slot_.assign(n, 0);
  depth_.assign(n, 0);
  capacity_ = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Formula& f = nodes_[i];
    switch (f.op()) {
      case Op::Atom:
        slot_[i] = std::lower_bound(predicates_.begin(), predicates_.end(), f.predicate()) -
                   predicates_.begin();
        break;
      case Op::And:
        child_[i] = index_.at(f.lhs());
        rhs_[i] = index_.at(f.rhs());
        depth_[i] = std::max(depth_[child_[i]], depth_[rhs_[i]]);
        break;
      case Op::Neg:
        child_[i] = index_.at(f.child());
        depth_[i] = depth_[child_[i]];
        break;
      case Op::Diamond:
        child_[i] = index_.at(f.child());
        depth_[i] = depth_[child_[i]] + 1;
        diamonds_.push_back(i);
        break;
      case Op::CountLeq:
        child_[i] = index_.at(f.child());
        depth_[i] = depth_[child_[i]];
        counting_.push_back(i);
        capacity_ = std::max(capacity_, f.bound());
        break;
    }
  }
}

std::optional<std::size_t> Closure::find(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace qml
