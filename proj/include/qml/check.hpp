#pragma once

#include <cstddef>
#include <vector>

#include "qml/closure.hpp"
#include "qml/detail/evaluate.hpp"
#include "qml/formula.hpp"
#include "qml/model.hpp"

namespace qml {

// Truth of every subformula of φ at every (world, object) of a model,
// computed once bottom-up over the closure.
class Evaluation {
 public:
  Evaluation(const KripkeModel& m, const Formula& phi, CountingScope scope = CountingScope::Actualist);

  const Closure& closure() const { return closure_; }
  bool holds(std::size_t world, std::size_t object, std::size_t sub) const {
    return ext_[sub * worlds_ + world].test(object);
  }
  bool holds(std::size_t world, std::size_t object) const;
  // Objects satisfying sub at world.
  const ObjectSet& extension(std::size_t world, std::size_t sub) const { return ext_[sub * worlds_ + world]; }
  // tp(w,a) as a bit-vector over the closure.
  boost::dynamic_bitset<> type_of(std::size_t world, std::size_t object) const;

 private:
  Closure closure_;
  std::size_t worlds_;
  std::vector<ObjectSet> ext_;
};

// M,w ⊨^a φ. Throws std::out_of_range if w ∉ W or a ∉ d(w).
bool check(const KripkeModel& m, std::size_t world, std::size_t object, const Formula& phi,
           CountingScope scope = CountingScope::Actualist);

}  // namespace qml
