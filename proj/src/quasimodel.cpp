#include "qml/quasimodel.hpp"

#include <sstream>
#include <stdexcept>

#include "qml/check.hpp"

namespace qml {

namespace {

QuasiVerdict fail(std::string clause, std::string detail) { return {false, std::move(clause), std::move(detail)}; }

std::string set_text(const TypeSet& t) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto i = t.find_first(); i != TypeSet::npos; i = t.find_next(i)) {
    os << (first ? "" : " ") << i;
    first = false;
  }
  os << '}';
  return os.str();
}

Natural cap_of(const Closure& cl) { return cl.capacity() + 1; }

std::size_t find_type(const Quasistate& q, const TypeSet& t) {
  for (std::size_t k = 0; k < q.types.size(); ++k)
    if (q.types[k] == t) return k;
  return SIZE_MAX;
}

}  // namespace

std::vector<std::vector<std::size_t>> Quasimodel::children() const {
  std::vector<std::vector<std::size_t>> ch(parent.size());
  for (std::size_t w = 0; w < parent.size(); ++w)
    if (parent[w] != kNoParent && parent[w] < parent.size()) ch[parent[w]].push_back(w);
  return ch;
}

QuasiVerdict validate_type(const TypeSet& t, const Closure& cl) {
  if (t.size() != cl.size())
    return fail("tp1", "type has " + std::to_string(t.size()) + " bits, closure has " + std::to_string(cl.size()));
  for (std::size_t s = 0; s < cl.size(); ++s) {
    if (cl.op(s) == Op::Neg && t.test(s) == t.test(cl.child(s)))
      return fail("tp1", "formula " + std::to_string(s) + " in " + set_text(t));
    if (cl.op(s) == Op::And && t.test(s) != (t.test(cl.child(s)) && t.test(cl.rhs(s))))
      return fail("tp2", "formula " + std::to_string(s) + " in " + set_text(t));
  }
  return {};
}

QuasiVerdict validate_quasistate(const Quasistate& q, const Closure& cl) {
  if (q.types.empty()) return fail("qs1", "no types");
  if (q.multiplicity.size() != q.types.size()) return fail("qs2", "multiplicity list length differs from type list");
  for (std::size_t k = 0; k < q.types.size(); ++k) {
    if (auto v = validate_type(q.types[k], cl); !v) return v;
    for (std::size_t j = 0; j < k; ++j)
      if (q.types[j] == q.types[k]) return fail("qs1", "duplicate type " + set_text(q.types[k]));
  }
  const Natural cap = cap_of(cl);
  for (std::size_t k = 0; k < q.types.size(); ++k)
    if (q.multiplicity[k] < 1 || q.multiplicity[k] > cap)
      return fail("qs2", "multiplicity " + q.multiplicity[k].str() + " of " + set_text(q.types[k]) +
                             " outside 1.." + cap.str());
  for (std::size_t s : cl.counting()) {
    Natural sum = 0;
    for (std::size_t k = 0; k < q.types.size(); ++k)
      if (q.types[k].test(cl.child(s))) sum += q.multiplicity[k];
    const bool holds = sum <= cl.bound(s);
    for (const TypeSet& t : q.types)
      if (t.test(s) != holds)
        return fail("qs3", "formula " + std::to_string(s) + " in " + set_text(t) + " against count " + sum.str());
  }
  return {};
}

QuasiVerdict validate_quasimodel(const Quasimodel& q, const Closure& cl) {
  const std::size_t W = q.world_count();
  if (W == 0) return fail("tree", "no worlds");
  if (q.states.size() != W) return fail("tree", "quasistate count differs from world count");
  std::size_t roots = 0;
  std::vector<unsigned> depth(W, 0);
  for (std::size_t w = 0; w < W; ++w) {
    if (q.parent[w] == Quasimodel::kNoParent) {
      ++roots;
      continue;
    }
    if (q.parent[w] >= W) return fail("tree", "world " + std::to_string(w) + " has an unknown parent");
    // Walk to the root; a path longer than W means a cycle.
    std::size_t v = w;
    unsigned d = 0;
    while (q.parent[v] != Quasimodel::kNoParent) {
      v = q.parent[v];
      if (++d > W) return fail("tree", "cycle through world " + std::to_string(w));
    }
    depth[w] = d;
  }
  if (roots != 1) return fail("tree", std::to_string(roots) + " roots");
  for (std::size_t w = 0; w < W; ++w)
    if (depth[w] > cl.modal_depth())
      return fail("tree", "world " + std::to_string(w) + " at depth " + std::to_string(depth[w]) + " exceeds " +
                              std::to_string(cl.modal_depth()));

  for (std::size_t w = 0; w < W; ++w)
    if (auto v = validate_quasistate(q.states[w], cl); !v) {
      v.detail = "world " + std::to_string(w) + ": " + v.detail;
      return v;
    }

  for (std::size_t i = 0; i < q.run_count(); ++i) {
    if (q.runs[i].size() != W) return fail("qm1", "run " + std::to_string(i) + " does not cover every world");
    for (std::size_t w = 0; w < W; ++w)
      if (find_type(q.states[w], q.runs[i][w]) == SIZE_MAX)
        return fail("qm1", "run " + std::to_string(i) + " at world " + std::to_string(w) + " picks " +
                               set_text(q.runs[i][w]) + " outside T_w");
  }

  bool witnessed = false;
  for (std::size_t w = 0; w < W && !witnessed; ++w)
    for (const TypeSet& t : q.states[w].types)
      if (t.test(cl.root())) witnessed = true;
  if (!witnessed) return fail("qm2", "no type contains the formula");

  const auto ch = q.children();
  for (std::size_t i = 0; i < q.run_count(); ++i)
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t s : cl.diamonds()) {
        bool seen = false;
        for (std::size_t v : ch[w]) seen = seen || q.runs[i][v].test(cl.child(s));
        const bool in = q.runs[i][w].test(s);
        if (seen && !in)
          return fail("qm3", "run " + std::to_string(i) + " world " + std::to_string(w) + " lacks formula " +
                                 std::to_string(s));
        if (!seen && in)
          return fail("qm4", "run " + std::to_string(i) + " world " + std::to_string(w) + " has no witness for " +
                                 std::to_string(s));
      }

  const Natural cap = cap_of(cl);
  for (std::size_t w = 0; w < W; ++w) {
    const Quasistate& st = q.states[w];
    std::vector<Natural> hits(st.types.size(), 0);
    for (std::size_t i = 0; i < q.run_count(); ++i) hits[find_type(st, q.runs[i][w])] += 1;
    for (std::size_t k = 0; k < st.types.size(); ++k) {
      Natural expected = hits[k] < cap ? hits[k] : cap;
      if (hits[k] == 0 || st.multiplicity[k] != expected)
        return fail("qm5", "world " + std::to_string(w) + " type " + set_text(st.types[k]) + " has multiplicity " +
                               st.multiplicity[k].str() + " but " + hits[k].str() + " runs");
    }
  }
  return {};
}

bool validate_type(const TypeSet& t, const Formula& phi) { return validate_type(t, Closure(phi)).ok; }
bool validate_quasistate(const Quasistate& q, const Formula& phi) { return validate_quasistate(q, Closure(phi)).ok; }
bool validate_quasimodel(const Quasimodel& q, const Formula& phi) { return validate_quasimodel(q, Closure(phi)).ok; }

Quasimodel model_to_quasimodel(const KripkeModel& m, const Formula& phi) {
  if (auto v = validate_model(m, DomainRegime::Constant); !v) throw std::invalid_argument(v.diagnostic);
  const std::size_t W = m.world_count();
  Quasimodel q;
  q.parent.assign(W, Quasimodel::kNoParent);
  for (auto [u, v] : m.edges) {
    if (q.parent[v] == u) continue;
    if (u == v || q.parent[v] != Quasimodel::kNoParent)
      throw std::invalid_argument("frame is not an irreflexive intransitive tree");
    q.parent[v] = u;
  }
  Evaluation ev(m, phi);
  const Closure& cl = ev.closure();
  const Natural cap = cl.capacity() + 1;
  q.states.resize(W);
  std::vector<std::size_t> dom;
  for (auto a = m.domain[0].find_first(); a != ObjectSet::npos; a = m.domain[0].find_next(a)) dom.push_back(a);
  q.runs.assign(dom.size(), std::vector<TypeSet>(W));
  for (std::size_t w = 0; w < W; ++w) {
    Quasistate& st = q.states[w];
    for (std::size_t r = 0; r < dom.size(); ++r) {
      TypeSet t = ev.type_of(w, dom[r]);
      std::size_t k = find_type(st, t);
      if (k == SIZE_MAX) {
        st.types.push_back(t);
        st.multiplicity.push_back(1);
      } else if (st.multiplicity[k] < cap) {
        st.multiplicity[k] += 1;
      }
      q.runs[r][w] = std::move(t);
    }
  }
  if (auto v = validate_quasimodel(q, cl); !v && v.clause == "tree") throw std::invalid_argument(v.detail);
  return q;
}

SatWitness quasimodel_to_model(const Quasimodel& q, const Formula& phi) {
  Closure cl(phi);
  if (auto v = validate_quasimodel(q, cl); !v)
    throw std::invalid_argument("invalid quasimodel (" + v.clause + "): " + v.detail);
  const std::size_t W = q.world_count(), I = q.run_count();
  SatWitness out;
  KripkeModel& m = out.model;
  for (std::size_t w = 0; w < W; ++w) m.worlds.push_back(default_world_name(w));
  for (std::size_t w = 0; w < W; ++w)
    if (q.parent[w] != Quasimodel::kNoParent) m.edges.emplace_back(q.parent[w], w);
  for (std::size_t i = 0; i < I; ++i) m.objects.push_back(default_object_name(i));
  ObjectSet all(I);
  all.set();
  m.domain.assign(W, all);
  for (std::size_t s = 0; s < cl.size(); ++s) {
    if (cl.op(s) != Op::Atom) continue;
    auto& ext = m.interp[cl.predicate(s)];
    ext.assign(W, ObjectSet(I));
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t i = 0; i < I; ++i)
        if (q.runs[i][w].test(s)) ext[w].set(i);
  }
  for (std::size_t w = 0; w < W; ++w)
    for (std::size_t i = 0; i < I; ++i)
      if (q.runs[i][w].test(cl.root())) {
        out.world = w;
        out.object = i;
        return out;
      }
  throw std::logic_error("validated quasimodel has no run through the formula");
}

}  // namespace qml
