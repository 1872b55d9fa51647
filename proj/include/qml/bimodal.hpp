#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qml/model.hpp"

namespace qml {

enum class BOp { Var, Neg, And, DiaH, DiaV, DiaU };

// Propositional bimodal formula over p0, p1, …. ◇_h is the horizontal (K)
// diamond, ◇_v the vertical one (S5 or Diff), ◇_u the universal diamond.
class Bimodal {
 public:
  static Bimodal var(unsigned index);
  static Bimodal neg(const Bimodal& f);
  static Bimodal conj(const Bimodal& l, const Bimodal& r);
  static Bimodal dia(BOp op, const Bimodal& f);

  BOp op() const { return node_->op; }
  unsigned index() const { return node_->index; }
  const Bimodal& child() const { return node_->kids[0]; }
  const Bimodal& lhs() const { return node_->kids[0]; }
  const Bimodal& rhs() const { return node_->kids[1]; }

  friend bool operator==(const Bimodal& a, const Bimodal& b);
  friend bool operator!=(const Bimodal& a, const Bimodal& b) { return !(a == b); }

 private:
  struct Node {
    BOp op;
    unsigned index = 0;
    std::vector<Bimodal> kids;
  };
  explicit Bimodal(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class BimodalParseError : public std::runtime_error {
 public:
  BimodalParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

// Surface: p<digits> ~ & | -> <h> [h] <v> [v] <u> [u] and parentheses.
Bimodal parse_bimodal(std::string_view text);
std::string print(const Bimodal& f);

// Post-order, duplicates collapsed to their first occurrence.
std::vector<Bimodal> subformulas(const Bimodal& f);
std::size_t connectives(const Bimodal& f);
unsigned horizontal_depth(const Bimodal& f);
// Largest variable index + 1.
unsigned variable_count(const Bimodal& f);
bool uses(const Bimodal& f, BOp op);

// Every formula over p0…p{vars−1} with at most max_connectives core
// connectives drawn from `ops` (a subset of Neg, And, DiaH, DiaV, DiaU).
std::vector<Bimodal> enumerate_bimodal(std::size_t max_connectives, unsigned vars, const std::vector<BOp>& ops);

// K_u: every relation on at most max_worlds worlds with the second relation
// universal.
bool ku_oracle(const Bimodal& phi, std::size_t max_worlds = 3);

enum class Vertical { S5, Diff };

struct ProductBounds {
  std::size_t max_horizontal = 4;  // worlds of the horizontal tree
  std::size_t max_branching = 3;
  std::size_t max_vertical = 3;    // points of the vertical frame
};

// Subframes of F_h × F_v with F_h an irreflexive intransitive tree of depth
// ≤ horizontal_depth(φ) and F_v a universal (S5) or inequality (Diff) frame.
// Expanding and Decreasing restrict the points present at each horizontal
// world accordingly; Constant is the full product.
bool product_oracle(const Bimodal& phi, Vertical vertical, DomainRegime regime, const ProductBounds& bounds = {});

}  // namespace qml
