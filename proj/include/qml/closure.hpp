#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qml/formula.hpp"

namespace qml {

// sub(φ) flattened in canonical order, children always before parents.
class Closure {
 public:
  explicit Closure(const Formula& phi);

  std::size_t size() const { return nodes_.size(); }
  std::size_t root() const { return nodes_.size() - 1; }
  const Formula& formula(std::size_t i) const { return nodes_[i]; }
  Op op(std::size_t i) const { return nodes_[i].op(); }
  // Operand index (left operand for And).
  std::size_t child(std::size_t i) const { return child_[i]; }
  std::size_t rhs(std::size_t i) const { return rhs_[i]; }
  const Natural& bound(std::size_t i) const { return nodes_[i].bound(); }
  const std::string& predicate(std::size_t i) const { return nodes_[i].predicate(); }
  // Slot of an atom's predicate in predicates().
  std::size_t predicate_slot(std::size_t i) const { return slot_[i]; }
  unsigned depth(std::size_t i) const { return depth_[i]; }

  std::optional<std::size_t> find(const Formula& f) const;
  const std::vector<std::string>& predicates() const { return predicates_; }
  unsigned modal_depth() const { return depth_.back(); }
  const Natural& capacity() const { return capacity_; }
  // Closure indices of CountLeq / Diamond nodes, ascending.
  const std::vector<std::size_t>& counting() const { return counting_; }
  const std::vector<std::size_t>& diamonds() const { return diamonds_; }

 private:
  std::vector<Formula> nodes_;
  std::vector<std::size_t> child_, rhs_, slot_;
  std::vector<unsigned> depth_;
  std::vector<std::string> predicates_;
  std::vector<std::size_t> counting_, diamonds_;
  Natural capacity_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

}  // namespace qml
