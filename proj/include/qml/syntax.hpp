#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qml/formula.hpp"

namespace qml {

enum class EncodingMode { Unary, Binary };

struct FormulaMetrics {
  Natural size;
  std::size_t n_sub = 0;
  unsigned modal_depth = 0;
  Natural capacity;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

// Parses the surface grammar and returns the desugared core formula.
// ∃[=c] at the root becomes ∃[≤c] ∧ ¬∃[≤c−1]. Nested occurrences use a fresh
// Q_k predicate: in place via desugar_count_eq under positive polarity,
// otherwise through a root-level definition □^{≤d}∀x(Q_k ↔ body).
Formula parse(std::string_view text, EncodingMode mode = EncodingMode::Binary);

// Canonical text of a core formula; parse(print(f)) == f.
std::string print(const Formula& f);

// ∃[≤c]xQ ∧ ¬∃[≤c−1]xQ ∧ ∀x(Q ↔ body), the middle conjunct omitted for c = 0.
Formula desugar_count_eq(const Natural& c, const Formula& body, const std::string& fresh);

FormulaMetrics metrics(const Formula& f, EncodingMode mode);

// sub(f) in post-order (children before parents), duplicates collapsed to
// their first occurrence.
std::vector<Formula> subformulas(const Formula& f);

unsigned modal_depth(const Formula& f);
Natural capacity(const Formula& f);

// Symbols needed to write bound c.
Natural bound_length(const Natural& c, EncodingMode mode);

}  // namespace qml
