#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qml/detail/evaluate.hpp"
#include "qml/formula.hpp"
#include "qml/model.hpp"

namespace qml {

struct SearchBounds {
  std::size_t max_worlds = 4;
  std::size_t max_objects = 3;
  std::size_t max_depth = 2;
  std::size_t max_branching = 2;
};

std::string describe(const SearchBounds& b);

// Rooted tree with worlds numbered in BFS order; world 0 is the root.
struct TreeShape {
  std::vector<std::size_t> parent;  // parent[0] unused
  std::vector<std::vector<std::size_t>> children;
  std::size_t depth = 0;
  std::size_t size() const { return parent.size(); }
};

// Every rooted unordered tree up to isomorphism with at most max_worlds
// nodes, depth ≤ max_depth and out-degree ≤ max_branching, smallest first.
std::vector<TreeShape> enumerate_tree_shapes(std::size_t max_worlds, std::size_t max_depth,
                                             std::size_t max_branching);

struct SatWitness {
  KripkeModel model;
  std::size_t world = 0;
  std::size_t object = 0;
};

// Streams every model over `signature` on tree frames within the bounds that
// satisfies the regime, one per isomorphism class of object assignments.
// Return false from visit to stop early.
void enumerate_models(const std::vector<std::string>& signature, const SearchBounds& bounds,
                      DomainRegime regime, const std::function<bool(const KripkeModel&)>& visit);

// Brute force: first enumerated model satisfying φ at its root, for some
// object of the root domain. Frames are cut to depth md(φ) and the signature
// to the predicates of φ.
std::optional<SatWitness> oracle_sat(const Formula& phi, DomainRegime regime, const SearchBounds& bounds,
                                     CountingScope scope = CountingScope::Actualist);

// Number of models enumerate_models would emit.
std::uint64_t count_models(std::size_t predicates, const SearchBounds& bounds, DomainRegime regime);

}  // namespace qml
