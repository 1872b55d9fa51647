#pragma once

#include <optional>

#include "qml/enumerate.hpp"
#include "qml/formula.hpp"

namespace qml {

// Bounded constant-domain satisfiability. For each object count k ≤
// max_objects the formula is grounded over a complete tree template of
// depth min(md(φ), max_depth) and branching max_branching, with world
// existence variables and at most max_worlds worlds, and handed to the CDCL
// solver. Witnesses are decoded and re-checked with check(). Complete
// relative to the bounds only.
std::optional<SatWitness> sat_constant(const Formula& phi, const SearchBounds& bounds);

// depth md(φ), branching n, objects n·(C+1) clamped to 64, worlds the full
// template size clamped to 4096. A heuristic cut, not a completeness bound.
SearchBounds default_constant_bounds(const Formula& phi);

}  // namespace qml
