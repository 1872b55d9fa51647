#include "qml/corpus.hpp"

#include <limits>
#include <unordered_set>

#include "qml/syntax.hpp"

namespace qml {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return v % n;
}

namespace {

Formula random_formula(std::mt19937_64& rng, std::size_t size, const CorpusSpec& spec) {
  if (size <= 1) return Formula::atom("P" + std::to_string(draw(rng, spec.predicates)));
  switch (draw(rng, 7)) {
    case 0:
      return Formula::neg(random_formula(rng, size - 1, spec));
    case 1:
    case 2:
      return Formula::diamond(random_formula(rng, size - 1, spec));
    case 3:
      return Formula::count_leq(draw(rng, spec.max_capacity + 1), random_formula(rng, size - 1, spec));
    case 4:
      if (size < 3) return Formula::count_leq(draw(rng, spec.max_capacity + 1), random_formula(rng, size - 1, spec));
      return Formula::neg(Formula::count_leq(draw(rng, spec.max_capacity + 1), random_formula(rng, size - 2, spec)));
    default: {
      if (size < 3) return Formula::neg(random_formula(rng, size - 1, spec));
      std::size_t left = 1 + draw(rng, size - 2);
      Formula l = random_formula(rng, left, spec);
      Formula r = random_formula(rng, size - 1 - left, spec);
      while (r == l) r = random_formula(rng, size - 1 - left, spec);
      return Formula::conj(l, r);
    }
  }
}

}  // namespace

std::vector<Formula> generate_corpus(std::uint64_t seed, std::size_t count, const CorpusSpec& spec) {
  std::mt19937_64 rng(seed);
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  while (out.size() < count) {
    Formula f = random_formula(rng, 3 + draw(rng, spec.max_sub), spec);
    FormulaMetrics m = metrics(f, EncodingMode::Binary);
    if (m.n_sub > spec.max_sub || m.modal_depth > spec.max_depth || m.capacity > spec.max_capacity) continue;
    if (seen.insert(f).second) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace qml
