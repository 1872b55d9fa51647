#pragma once

#include <string>
#include <vector>

#include "qml/bimodal.hpp"
#include "qml/formula.hpp"
#include "qml/model.hpp"

namespace qml {

enum class SymbolRole { Existence, Subformula, Source, Target };

struct FreshSymbol {
  std::string predicate;
  SymbolRole role;
  std::string origin;  // printed source subformula for Q symbols
};

struct TranslationResult {
  Formula formula;  // zeta ∧ body
  Formula zeta;
  Formula body;
  std::vector<FreshSymbol> fresh_symbols;
};

// (∃[≤c]xψ)^E = ∃[≤c]x(E(x) ∧ ψ^E), homomorphic elsewhere. Throws
// SymbolCollision when e occurs in φ.
Formula relativize(const Formula& phi, const std::string& e);

// Expanding: □^{≤m}∀x(E(x) → □E(x)). Decreasing: ∀x□^{≤m}(◇E(x) → E(x)).
Formula zeta_regime(DomainRegime regime, unsigned m, const std::string& e);

// zeta = ζ_regime(md φ) ∧ E(x) ∧ □^{≤m}∃xE(x) ∧ ⋀_P □^{≤m}∀x(P(x) → E(x)),
// body = φ^E. The last three conjuncts keep the evaluation object inside E,
// keep E nonempty and make atoms false outside E.
TranslationResult reduce_to_constant(const Formula& phi, DomainRegime regime);

// Inverse direction of reduce_to_constant: worlds up to `depth`, d(w) the
// extension of e at w, e dropped and atoms cut to d(w).
KripkeModel existence_model(const KripkeModel& m, const std::string& e, unsigned depth);

// ζ_exp ∧ ζ_dec ∧ ∀x□^{≤m}∀x(∃[≤N]x⊤ ∧ ¬∃[≤N−1]x⊤) ∧ E(x) ∧ φ^E with
// ⊤ = P0(x) ∨ ¬P0(x). Satisfiable in either varying regime iff φ has a
// constant-domain model with 1 ≤ |D| ≤ N.
Formula pin_domain(const Formula& phi, const Natural& n);

// K_u → decreasing domains. Requires ◇_h and ◇_u only.
TranslationResult translate_ku(const Bimodal& phi);

// ◇_h ↦ ◇, ◇_v ↦ ∃x.
Formula translate_product_s5(const Bimodal& phi);

// (◇_vψ)† = Q_ψ(x); zeta = ⋀_ψ □^{≤m}∀x(Q_ψ(x) ↔ ∃^≠xψ†) with m the
// horizontal depth of φ.
TranslationResult translate_product_diff(const Bimodal& phi);

// θ_n = ⋀_{k≤n} ∀x□^k((◇∃xP_k ∧ ◇∃x¬P_k) ∧ ⋀_{ℓ<k}(P_ℓ→□∀xP_ℓ) ∧ (¬P_ℓ→□∀x¬P_ℓ)).
Formula gen_theta(unsigned n);

}  // namespace qml
