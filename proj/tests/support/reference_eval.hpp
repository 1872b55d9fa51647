#pragma once

#include <cstddef>

#include "qml/formula.hpp"
#include "qml/model.hpp"

namespace qml::testing {

// Plain recursion over the formula, no memo, no closure; the second
// implementation the checker is compared against.
bool reference_holds(const KripkeModel& m, std::size_t world, std::size_t object, const Formula& phi);

}  // namespace qml::testing
