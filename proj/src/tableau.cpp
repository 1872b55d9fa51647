#include "qml/tableau.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>

#include "qml/check.hpp"
#include "qml/syntax.hpp"

namespace qml {

namespace {

std::size_t distinct_bodies(const Closure& cl) {
  std::set<std::size_t> bodies;
  for (std::size_t s : cl.counting()) bodies.insert(cl.child(s));
  return bodies.size();
}

std::size_t clamp_to(const Natural& v, std::size_t hi) { return v > hi ? hi : static_cast<std::size_t>(v); }

std::uint32_t graph_hash(const std::vector<TypeSet>& lambda) {
  std::uint32_t h = 2166136261u;
  auto mix = [&h](std::size_t v) {
    h ^= static_cast<std::uint32_t>(v);
    h *= 16777619u;
  };
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (auto s = lambda[i].find_first(); s != TypeSet::npos; s = lambda[i].find_next(s)) {
      mix(i);
      mix(s);
    }
  return h;
}

class Engine {
 public:
  Engine(const Formula& phi, std::size_t N, std::optional<std::size_t> fresh_cap, bool memoize, std::ostream* trace)
      : cl_(phi), N_(N), memoize_(memoize), trace_(trace) {
    const Natural per = Natural(distinct_bodies(cl_)) * (cl_.capacity() + 1);
    fresh_cap_ = fresh_cap ? *fresh_cap : clamp_to(per, N_);
    root_cap_ = std::min<std::size_t>(N_, clamp_to(per + 1, N_));
    for (std::size_t s : cl_.counting()) bound_.push_back(clamp_to(cl_.bound(s), N_ + 1));
    build_pools();
  }

  const Closure& closure() const { return cl_; }
  std::size_t root_cap() const { return root_cap_; }
  TableauStats& stats() { return stats_; }

  bool local(const std::vector<TypeSet>& lambda) const {
    for (const TypeSet& t : lambda)
      if (!validate_type(t, cl_)) return false;
    for (std::size_t c = 0; c < cl_.counting().size(); ++c) {
      const std::size_t s = cl_.counting()[c];
      std::size_t count = 0;
      for (const TypeSet& t : lambda) count += t.test(cl_.child(s));
      for (const TypeSet& t : lambda)
        if (t.test(s) != (count <= bound_[c])) return false;
    }
    return true;
  }

  bool world(unsigned k, const std::vector<TypeSet>& lambda) {
    ++stats_.calls;
    ++depth_;
    stats_.max_recursion = std::max(stats_.max_recursion, depth_);
    bool result = solve(k, lambda);
    --depth_;
    if (trace_)
      *trace_ << "k=" << k << " t=" << lambda.size() << " g=" << std::hex << std::setw(8) << std::setfill('0')
              << graph_hash(lambda) << std::dec << std::setfill(' ') << ' ' << (result ? "TRUE" : "FALSE") << '\n';
    return result;
  }

  // Some λ' over t' ∈ {t,…,min(N, t+fresh)} indices with ψ ∈ λ'(i), the
  // coherence filter on old indices, and a successful call at depth k−1.
  bool successor(unsigned k, const std::vector<TypeSet>& lambda, std::size_t i, std::size_t psi,
                 std::vector<TypeSet>* out) {
    const std::size_t t = lambda.size();
    const std::size_t most = std::min(fresh_cap_, N_ - std::min(N_, t));
    for (std::size_t f = 0; f <= most; ++f)
      for (const auto& [sig, pool] : pools_) {
        std::vector<Slot> slots;
        // Old indices with identical labels and options are interchangeable.
        std::map<TypeSet, std::size_t> group;
        bool dead = false;
        for (std::size_t j = 0; j < t && !dead; ++j) {
          if (j != i) {
            auto it = group.find(lambda[j]);
            if (it != group.end()) {
              slots[it->second].positions.push_back(j);
              continue;
            }
          }
          Slot slot;
          slot.positions.push_back(j);
          for (const TypeSet& ty : pool)
            if (coherent(lambda[j], ty) && (j != i || ty.test(psi))) slot.options.push_back(&ty);
          if (slot.options.empty()) dead = true;
          if (j != i) group.emplace(lambda[j], slots.size());
          slots.push_back(std::move(slot));
        }
        if (dead) continue;
        if (f > 0) {
          Slot fresh;
          for (std::size_t j = t; j < t + f; ++j) fresh.positions.push_back(j);
          for (const TypeSet& ty : pool) fresh.options.push_back(&ty);
          slots.push_back(std::move(fresh));
        }
        std::vector<TypeSet> next(t + f);
        bool found = assign(slots, sig, next, [&](const std::vector<TypeSet>& cand) {
          if (!world(k - 1, cand)) return false;
          if (out) *out = cand;
          return true;
        });
        if (found) return true;
      }
    return false;
  }

  // Root labels: multisets of t types with φ in at least one.
  bool root(std::size_t t, std::vector<TypeSet>* out) {
    for (const auto& [sig, pool] : pools_) {
      Slot slot;
      for (std::size_t j = 0; j < t; ++j) slot.positions.push_back(j);
      bool any = false;
      for (const TypeSet& ty : pool) {
        slot.options.push_back(&ty);
        any = any || ty.test(cl_.root());
      }
      if (!any) continue;
      std::vector<Slot> slots{std::move(slot)};
      std::vector<TypeSet> next(t);
      bool found = assign(slots, sig, next, [&](const std::vector<TypeSet>& cand) {
        if (std::none_of(cand.begin(), cand.end(), [&](const TypeSet& x) { return x.test(cl_.root()); }))
          return false;
        if (!world(cl_.modal_depth(), cand)) return false;
        if (out) *out = cand;
        return true;
      });
      if (found) return true;
    }
    return false;
  }

 private:
  struct Slot {
    std::vector<std::size_t> positions;
    std::vector<const TypeSet*> options;
  };

  bool solve(unsigned k, const std::vector<TypeSet>& lambda) {
    if (lambda.size() > N_ || lambda.empty()) return false;
    if (!local(lambda)) return false;
    if (k == 0) return true;
    std::vector<TypeSet> key;
    if (memoize_) {
      key = lambda;
      std::sort(key.begin(), key.end());
      auto it = memo_.find({k, key});
      if (it != memo_.end()) {
        ++stats_.memo_hits;
        return it->second;
      }
    }
    bool ok = true;
    std::set<TypeSet> done;  // indices with equal labels need one check
    for (std::size_t i = 0; i < lambda.size() && ok; ++i) {
      if (!done.insert(lambda[i]).second) continue;
      for (std::size_t d : cl_.diamonds())
        if (lambda[i].test(d) && !successor(k, lambda, i, cl_.child(d), nullptr)) {
          ok = false;
          break;
        }
    }
    if (memoize_) {
      memo_.emplace(std::make_pair(k, std::move(key)), ok);
      stats_.memo_entries = memo_.size();
    }
    return ok;
  }

  // ξ ∈ λ'(j) only if ◇ξ ∈ λ(j).
  bool coherent(const TypeSet& before, const TypeSet& after) const {
    for (std::size_t d : cl_.diamonds())
      if (!before.test(d) && after.test(cl_.child(d))) return false;
    return true;
  }

  // Fills every slot with a non-decreasing choice of options, pruning on the
  // counting signature; visit returns true to stop.
  bool assign(const std::vector<Slot>& slots, const TypeSet& sig, std::vector<TypeSet>& next,
              const std::function<bool(const std::vector<TypeSet>&)>& visit) {
    const std::size_t q = cl_.counting().size();
    std::vector<std::size_t> count(q, 0);
    std::function<bool(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t s, std::size_t p,
                                                                         std::size_t from) -> bool {
      if (s == slots.size()) {
        for (std::size_t c = 0; c < q; ++c)
          if (sig.test(cl_.counting()[c]) != (count[c] <= bound_[c])) return false;
        return visit(next);
      }
      const Slot& slot = slots[s];
      if (p == slot.positions.size()) return rec(s + 1, 0, 0);
      for (std::size_t o = from; o < slot.options.size(); ++o) {
        const TypeSet& ty = *slot.options[o];
        bool over = false;
        for (std::size_t c = 0; c < q; ++c)
          if (ty.test(cl_.child(cl_.counting()[c]))) {
            ++count[c];
            over = over || (sig.test(cl_.counting()[c]) && count[c] > bound_[c]);
          }
        bool stop = false;
        if (!over) {
          next[slot.positions[p]] = ty;
          stop = rec(s, p + 1, o);
        }
        for (std::size_t c = 0; c < q; ++c)
          if (ty.test(cl_.child(cl_.counting()[c]))) --count[c];
        if (stop) return true;
      }
      return false;
    };
    return rec(0, 0, 0);
  }

  // Every Boolean-saturated subset of Σ, keyed by its counting signature
  // (the counting members, which (tab2) makes uniform across indices).
  void build_pools() {
    std::vector<std::size_t> free;
    for (std::size_t s = 0; s < cl_.size(); ++s)
      if (cl_.op(s) == Op::Atom || cl_.op(s) == Op::Diamond || cl_.op(s) == Op::CountLeq) free.push_back(s);
    if (free.size() > 22) throw TableauRefusal("closure has too many non-Boolean subformulas for the tableau");
    TypeSet counting_mask(cl_.size());
    for (std::size_t s : cl_.counting()) counting_mask.set(s);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
      TypeSet t(cl_.size());
      for (std::size_t f = 0; f < free.size(); ++f)
        if (bits >> f & 1) t.set(free[f]);
      for (std::size_t s = 0; s < cl_.size(); ++s) {
        if (cl_.op(s) == Op::Neg) t[s] = !t.test(cl_.child(s));
        if (cl_.op(s) == Op::And) t[s] = t.test(cl_.child(s)) && t.test(cl_.rhs(s));
      }
      pools_[t & counting_mask].push_back(std::move(t));
    }
    for (auto& [sig, pool] : pools_) std::sort(pool.begin(), pool.end());
  }

  Closure cl_;
  std::size_t N_;
  std::size_t fresh_cap_ = 0, root_cap_ = 1;
  bool memoize_;
  std::ostream* trace_;
  std::vector<std::size_t> bound_;
  std::map<TypeSet, std::vector<TypeSet>> pools_;
  std::map<std::pair<unsigned, std::vector<TypeSet>>, bool> memo_;
  TableauStats stats_;
  unsigned depth_ = 0;
};

struct BuiltNode {
  std::vector<TypeSet> lambda;
  std::size_t parent;
};

void rebuild(Engine& e, unsigned k, std::size_t node, std::vector<BuiltNode>& nodes) {
  if (k == 0) return;
  const Closure& cl = e.closure();
  std::set<std::vector<TypeSet>> made;
  const std::vector<TypeSet> lambda = nodes[node].lambda;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t d : cl.diamonds()) {
      if (!lambda[i].test(d)) continue;
      std::vector<TypeSet> next;
      if (!e.successor(k, lambda, i, cl.child(d), &next))
        throw std::logic_error("tableau successor vanished during reconstruction");
      if (!made.insert(next).second) continue;
      nodes.push_back({std::move(next), node});
      rebuild(e, k - 1, nodes.size() - 1, nodes);
    }
}

}  // namespace

Natural domain_cap(const Formula& phi) {
  FormulaMetrics m = metrics(phi, EncodingMode::Binary);
  return Natural(m.n_sub) * std::max(m.modal_depth, 1u) * (m.capacity + 1);
}

bool check_local(const Closure& cl, const TableauLabel& label) {
  for (const TypeSet& t : label.lambda)
    if (!validate_type(t, cl)) return false;
  for (std::size_t s : cl.counting()) {
    Natural count = 0;
    for (const TypeSet& t : label.lambda) count += t.test(cl.child(s));
    for (const TypeSet& t : label.lambda)
      if (t.test(s) != (count <= cl.bound(s))) return false;
  }
  return true;
}

bool qkworld(const Formula& phi, const TableauParams& params, const TableauLabel& label, TableauStats* stats) {
  if (label.t() > params.N) return false;
  Engine e(phi, params.N, params.fresh_cap, params.memoize, params.trace);
  bool r = e.world(params.k, label.lambda);
  if (stats) *stats = e.stats();
  return r;
}

std::optional<SatWitness> sat_expanding(const Formula& phi, const ExpandingOptions& options) {
  const Natural cap = domain_cap(phi);
  if (cap > options.n_cap)
    throw TableauRefusal("domain cap " + cap.str() + " exceeds the ceiling " + std::to_string(options.n_cap));
  std::size_t n = static_cast<std::size_t>(cap);
  if (options.domain_limit) n = std::min(n, *options.domain_limit);
  Engine e(phi, n, std::nullopt, options.memoize, options.trace);
  std::vector<TypeSet> root;
  bool found = false;
  for (std::size_t t = 1; t <= e.root_cap() && !found; ++t) found = e.root(t, &root);
  if (!found) {
    if (options.stats) *options.stats = e.stats();
    return std::nullopt;
  }

  const unsigned m = e.closure().modal_depth();
  std::vector<BuiltNode> nodes{{root, Quasimodel::kNoParent}};
  rebuild(e, m, 0, nodes);
  if (options.stats) *options.stats = e.stats();

  const Closure& cl = e.closure();
  std::size_t objects = 0;
  for (const auto& n : nodes) objects = std::max(objects, n.lambda.size());
  SatWitness out;
  KripkeModel& model = out.model;
  for (std::size_t w = 0; w < nodes.size(); ++w) {
    model.worlds.push_back(default_world_name(w));
    if (nodes[w].parent != Quasimodel::kNoParent) model.edges.emplace_back(nodes[w].parent, w);
  }
  for (std::size_t a = 0; a < objects; ++a) model.objects.push_back(default_object_name(a));
  for (const auto& n : nodes) {
    ObjectSet d(objects);
    for (std::size_t a = 0; a < n.lambda.size(); ++a) d.set(a);
    model.domain.push_back(d);
  }
  for (std::size_t s = 0; s < cl.size(); ++s) {
    if (cl.op(s) != Op::Atom) continue;
    auto& ext = model.interp[cl.predicate(s)];
    ext.assign(nodes.size(), ObjectSet(objects));
    for (std::size_t w = 0; w < nodes.size(); ++w)
      for (std::size_t a = 0; a < nodes[w].lambda.size(); ++a)
        if (nodes[w].lambda[a].test(s)) ext[w].set(a);
  }
  while (!root[out.object].test(cl.root())) ++out.object;
  if (!validate_model(model, DomainRegime::Expanding) || !check(model, 0, out.object, phi))
    throw std::logic_error("tableau witness rejected by the model checker");
  return out;
}

}  // namespace qml
