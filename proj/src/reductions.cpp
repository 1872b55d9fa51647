#include "qml/reductions.hpp"

#include <functional>
#include <stdexcept>

#include "qml/syntax.hpp"

namespace qml {

namespace {

Formula relativize_rec(const Formula& f, const Formula& e) {
  switch (f.op()) {
    case Op::Atom: return f;
    case Op::Neg: return Formula::neg(relativize_rec(f.child(), e));
    case Op::And: return Formula::conj(relativize_rec(f.lhs(), e), relativize_rec(f.rhs(), e));
    case Op::Diamond: return Formula::diamond(relativize_rec(f.child(), e));
    case Op::CountLeq: return Formula::count_leq(f.bound(), Formula::conj(e, relativize_rec(f.child(), e)));
  }
  throw std::logic_error("unknown operator");
}

std::string pred(unsigned k) { return "P" + std::to_string(k); }

// Q symbol per subformula, allocated in post-order.
class QTable {
 public:
  QTable(const Bimodal& phi, std::vector<std::string>& taken, std::vector<FreshSymbol>& fresh)
      : subs_(subformulas(phi)) {
    for (const Bimodal& s : subs_) {
      names_.push_back(fresh_symbol("Q_", taken));
      taken.push_back(names_.back());
      fresh.push_back({names_.back(), SymbolRole::Subformula, print(s)});
    }
  }
  const std::vector<Bimodal>& subs() const { return subs_; }
  Formula q(const Bimodal& s) const {
    for (std::size_t k = 0; k < subs_.size(); ++k)
      if (subs_[k] == s) return Formula::atom(names_[k]);
    throw std::logic_error("no Q symbol for subformula");
  }

 private:
  std::vector<Bimodal> subs_;
  std::vector<std::string> names_;
};

std::vector<std::string> source_predicates(const Bimodal& phi) {
  std::vector<std::string> out;
  for (unsigned k = 0; k < variable_count(phi); ++k) out.push_back(pred(k));
  return out;
}

}  // namespace

Formula relativize(const Formula& phi, const std::string& e) {
  if (mentions_predicate(phi, e)) throw SymbolCollision(e);
  return relativize_rec(phi, Formula::atom(e));
}

Formula zeta_regime(DomainRegime regime, unsigned m, const std::string& e) {
  const Formula E = Formula::atom(e);
  switch (regime) {
    case DomainRegime::Expanding: return Formula::box_upto(Formula::forall(Formula::implies(E, Formula::box(E))), m);
    case DomainRegime::Decreasing:
      return Formula::forall(Formula::box_upto(Formula::implies(Formula::diamond(E), E), m));
    default: throw std::invalid_argument("zeta_regime needs Expanding or Decreasing");
  }
}

TranslationResult reduce_to_constant(const Formula& phi, DomainRegime regime) {
  const auto preds = predicates_of(phi);
  const std::string e = fresh_symbol("E_", preds);
  const unsigned m = modal_depth(phi);
  const Formula E = Formula::atom(e);
  std::vector<Formula> zeta{zeta_regime(regime, m, e), E, Formula::box_upto(Formula::exists(E), m)};
  for (const std::string& p : preds)
    zeta.push_back(Formula::box_upto(Formula::forall(Formula::implies(Formula::atom(p), E)), m));
  const Formula z = Formula::conj_all(zeta);
  const Formula body = relativize(phi, e);
  return {Formula::conj(z, body), z, body, {{e, SymbolRole::Existence, ""}}};
}

KripkeModel existence_model(const KripkeModel& m, const std::string& e, unsigned depth) {
  const auto ext = m.interp.find(e);
  if (ext == m.interp.end()) throw std::invalid_argument("model does not interpret " + e);
  const auto succ = m.successors();
  std::vector<std::size_t> keep{0}, level{0};
  std::vector<std::size_t> index(m.world_count(), SIZE_MAX);
  index[0] = 0;
  for (std::size_t k = 0; k < keep.size(); ++k)
    if (level[k] < depth)
      for (std::size_t v : succ[keep[k]])
        if (index[v] == SIZE_MAX) {
          index[v] = keep.size();
          keep.push_back(v);
          level.push_back(level[k] + 1);
        }
  KripkeModel out;
  out.objects = m.objects;
  for (std::size_t w : keep) {
    out.worlds.push_back(m.worlds[w]);
    out.domain.push_back(ext->second[w]);
  }
  for (const auto& [u, v] : m.edges)
    if (index[u] != SIZE_MAX && index[v] != SIZE_MAX) out.edges.emplace_back(index[u], index[v]);
  for (const auto& [p, worlds] : m.interp) {
    if (p == e) continue;
    auto& dst = out.interp[p];
    for (std::size_t w : keep) dst.push_back(worlds[w] & ext->second[w]);
  }
  return out;
}

Formula pin_domain(const Formula& phi, const Natural& n) {
  if (n < 1) throw std::invalid_argument("pin_domain needs N >= 1");
  const std::string e = fresh_symbol("E_", predicates_of(phi));
  const unsigned m = modal_depth(phi);
  const Formula top = Formula::top("P0");
  const Formula exactly = Formula::conj(Formula::count_leq(n, top), Formula::neg(Formula::count_leq(n - 1, top)));
  const Formula pin = Formula::forall(Formula::box_upto(Formula::forall(exactly), m));
  return Formula::conj_all({zeta_regime(DomainRegime::Expanding, m, e), zeta_regime(DomainRegime::Decreasing, m, e),
                            pin, Formula::atom(e), relativize(phi, e)});
}

TranslationResult translate_ku(const Bimodal& phi) {
  if (uses(phi, BOp::DiaV)) throw std::invalid_argument("K_u formulas use <h> and <u> only");
  std::vector<std::string> taken = source_predicates(phi);
  std::vector<FreshSymbol> fresh;
  const std::string s = fresh_symbol("S_", taken);
  taken.push_back(s);
  const std::string t = fresh_symbol("T_", taken);
  taken.push_back(t);
  fresh.push_back({s, SymbolRole::Source, ""});
  fresh.push_back({t, SymbolRole::Target, ""});
  QTable table(phi, taken, fresh);
  const Formula S = Formula::atom(s), T = Formula::atom(t);

  std::function<Formula(const Bimodal&)> tr = [&](const Bimodal& f) -> Formula {
    switch (f.op()) {
      case BOp::Var: return Formula::atom(pred(f.index()));
      case BOp::Neg: return Formula::neg(tr(f.child()));
      case BOp::And: return Formula::conj(tr(f.lhs()), tr(f.rhs()));
      case BOp::DiaH:
        return Formula::diamond(Formula::conj(S, Formula::exists(Formula::conj(T, table.q(f.child())))));
      case BOp::DiaU: return Formula::exists(tr(f.child()));
      default: throw std::logic_error("unreachable");
    }
  };

  std::vector<Formula> zeta;
  for (const Bimodal& psi : table.subs())
    zeta.push_back(Formula::forall(Formula::implies(tr(psi), Formula::box(table.q(psi)))));
  for (const Bimodal& psi : table.subs())
    zeta.push_back(Formula::forall(Formula::implies(Formula::diamond(table.q(psi)), tr(psi))));
  const Formula z = Formula::conj_all(zeta);
  const Formula body = tr(phi);
  return {Formula::conj(z, body), z, body, std::move(fresh)};
}

Formula translate_product_s5(const Bimodal& phi) {
  switch (phi.op()) {
    case BOp::Var: return Formula::atom(pred(phi.index()));
    case BOp::Neg: return Formula::neg(translate_product_s5(phi.child()));
    case BOp::And: return Formula::conj(translate_product_s5(phi.lhs()), translate_product_s5(phi.rhs()));
    case BOp::DiaH: return Formula::diamond(translate_product_s5(phi.child()));
    case BOp::DiaV: return Formula::exists(translate_product_s5(phi.child()));
    case BOp::DiaU: break;
  }
  throw std::invalid_argument("product formulas use <h> and <v> only");
}

TranslationResult translate_product_diff(const Bimodal& phi) {
  if (uses(phi, BOp::DiaU)) throw std::invalid_argument("product formulas use <h> and <v> only");
  std::vector<std::string> taken = source_predicates(phi);
  std::vector<FreshSymbol> fresh;
  QTable table(phi, taken, fresh);

  std::function<Formula(const Bimodal&)> tr = [&](const Bimodal& f) -> Formula {
    switch (f.op()) {
      case BOp::Var: return Formula::atom(pred(f.index()));
      case BOp::Neg: return Formula::neg(tr(f.child()));
      case BOp::And: return Formula::conj(tr(f.lhs()), tr(f.rhs()));
      case BOp::DiaH: return Formula::diamond(tr(f.child()));
      case BOp::DiaV: return table.q(f.child());
      default: throw std::logic_error("unreachable");
    }
  };

  const unsigned m = horizontal_depth(phi);
  std::vector<Formula> zeta;
  for (const Bimodal& psi : table.subs()) {
    const Formula p = tr(psi);
    const Formula other =
        Formula::disj(Formula::conj(Formula::neg(p), Formula::neg(Formula::count_leq(0, p))),
                      Formula::neg(Formula::count_leq(1, p)));
    zeta.push_back(Formula::box_upto(Formula::forall(Formula::iff(table.q(psi), other)), m));
  }
  const Formula z = Formula::conj_all(zeta);
  const Formula body = tr(phi);
  return {Formula::conj(z, body), z, body, std::move(fresh)};
}

Formula gen_theta(unsigned n) {
  std::vector<Formula> parts;
  for (unsigned k = 0; k <= n; ++k) {
    const Formula pk = Formula::atom(pred(k));
    Formula inner = Formula::conj(Formula::diamond(Formula::exists(pk)), Formula::diamond(Formula::exists(Formula::neg(pk))));
    for (unsigned l = 0; l < k; ++l) {
      const Formula pl = Formula::atom(pred(l));
      inner = Formula::conj(inner, Formula::conj(Formula::implies(pl, Formula::box(Formula::forall(pl))),
                                                 Formula::implies(Formula::neg(pl), Formula::box(Formula::forall(Formula::neg(pl))))));
    }
    parts.push_back(Formula::forall(Formula::box_n(inner, k)));
  }
  return Formula::conj_all(parts);
}

}  // namespace qml
