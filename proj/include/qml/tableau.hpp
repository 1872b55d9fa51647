#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qml/closure.hpp"
#include "qml/enumerate.hpp"
#include "qml/formula.hpp"
#include "qml/quasimodel.hpp"

namespace qml {

// λ : {0,…,t−1} → 2^Σ, one bit-vector over the closure per index.
struct TableauLabel {
  std::vector<TypeSet> lambda;
  std::size_t t() const { return lambda.size(); }
};

struct TableauParams {
  std::size_t N = 1;  // global domain cap
  unsigned k = 0;     // remaining depth
  bool memoize = true;
  // Fresh indices per successor; unset means q·(C+1) for q distinct
  // counting bodies.
  std::optional<std::size_t> fresh_cap;
  // One line per call: depth, t, hash of G(λ), verdict.
  std::ostream* trace = nullptr;
};

struct TableauStats {
  std::uint64_t calls = 0;
  std::uint64_t memo_hits = 0;
  std::size_t memo_entries = 0;
  unsigned max_recursion = 0;
};

class TableauRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// n·max(m,1)·(C+1).
Natural domain_cap(const Formula& phi);

// (tab1) Boolean saturation of every λ(i) and (tab2) counting consistency.
bool check_local(const Closure& cl, const TableauLabel& label);

bool qkworld(const Formula& phi, const TableauParams& params, const TableauLabel& label,
             TableauStats* stats = nullptr);

struct ExpandingOptions {
  bool memoize = true;
  std::ostream* trace = nullptr;
  // Refuse when domain_cap(φ) exceeds this.
  std::size_t n_cap = 4096;
  // Search with N = min(domain_cap(φ), domain_limit); the verdict is then
  // relative to that bound.
  std::optional<std::size_t> domain_limit;
  TableauStats* stats = nullptr;
};

// Decides expanding-domain satisfiability: some root label over t ≤ N
// indices with φ ∈ λ(i) for which qkworld succeeds at depth md(φ). The
// witness is rebuilt from the successful recursion with domains {0,…,t−1}.
// Throws TableauRefusal when domain_cap(φ) > n_cap, also when a domain
// limit is set.
std::optional<SatWitness> sat_expanding(const Formula& phi, const ExpandingOptions& options = {});

}  // namespace qml
