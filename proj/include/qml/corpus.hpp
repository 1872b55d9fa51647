#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qml/formula.hpp"

namespace qml {

struct CorpusSpec {
  std::size_t max_sub = 8;
  unsigned max_depth = 2;
  unsigned max_capacity = 2;
  std::size_t predicates = 2;  // P0 … P{predicates-1}
};

// Uniform draw from {0,…,n−1} by rejection, so sequences are identical on
// every standard library.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n);

// `count` pairwise distinct random core formulas within the spec, identical
// for identical seeds.
std::vector<Formula> generate_corpus(std::uint64_t seed, std::size_t count, const CorpusSpec& spec = {});

}  // namespace qml
