#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "qml/closure.hpp"
#include "qml/enumerate.hpp"
#include "qml/formula.hpp"
#include "qml/model.hpp"

namespace qml {

// Subset of sub(φ) as a bit-vector over the closure order.
using TypeSet = boost::dynamic_bitset<>;

struct Quasistate {
  std::vector<TypeSet> types;
  std::vector<Natural> multiplicity;  // parallel to types
};

struct Quasimodel {
  static constexpr std::size_t kNoParent = SIZE_MAX;

  std::vector<std::size_t> parent;  // kNoParent at the root
  std::vector<Quasistate> states;   // per world
  std::vector<std::vector<TypeSet>> runs;  // runs[i][w]

  std::size_t world_count() const { return parent.size(); }
  std::size_t run_count() const { return runs.size(); }
  std::vector<std::vector<std::size_t>> children() const;
};

struct QuasiVerdict {
  bool ok = true;
  std::string clause;  // tp1, tp2, qs1, qs2, qs3, qm1 … qm5, tree
  std::string detail;
  explicit operator bool() const { return ok; }
};

QuasiVerdict validate_type(const TypeSet& t, const Closure& cl);
QuasiVerdict validate_quasistate(const Quasistate& q, const Closure& cl);
QuasiVerdict validate_quasimodel(const Quasimodel& q, const Closure& cl);

bool validate_type(const TypeSet& t, const Formula& phi);
bool validate_quasistate(const Quasistate& q, const Formula& phi);
bool validate_quasimodel(const Quasimodel& q, const Formula& phi);

// Types tp(w,a), capped multiplicities, one run per object. Requires a
// constant-domain tree model of depth ≤ md(φ); throws std::invalid_argument
// otherwise.
Quasimodel model_to_quasimodel(const KripkeModel& m, const Formula& phi);

// D = d(w) = I, interp(w,P) = {i : P ∈ r_i(w)}; the witness is the first
// (w, i) with φ ∈ r_i(w). Throws std::invalid_argument on an invalid input.
SatWitness quasimodel_to_model(const Quasimodel& q, const Formula& phi);

// Two-step shrinking: witness runs and worlds (Step 1), then closure of the
// basic structure under index transpositions (Step 2).
Quasimodel prune(const Quasimodel& q, const Formula& phi);

// m'²·2^{8nm'}·C' and m'·2^{5nm'}·C' with m' = max(m,1), C' = max(C,1).
Natural pruning_world_bound(std::size_t n, std::size_t m, const Natural& c);
Natural pruning_index_bound(std::size_t n, std::size_t m, const Natural& c);

std::string write_quasimodel(const Quasimodel& q);
// Throws std::runtime_error on malformed input.
Quasimodel read_quasimodel(std::string_view text);

}  // namespace qml
