#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "qml/quasimodel.hpp"

namespace qml {

namespace {

using Transposition = std::pair<std::size_t, std::size_t>;

// σ as the list of transpositions applied in order.
std::size_t permute(const std::vector<Transposition>& sigma, std::size_t i) {
  for (auto [a, b] : sigma) {
    if (i == a)
      i = b;
    else if (i == b)
      i = a;
  }
  return i;
}

class Pruner {
 public:
  Pruner(const Quasimodel& q, const Closure& cl) : q_(q), cl_(cl), ch_(q.children()) {}

  Quasimodel run() {
    select_worlds();
    select_indices();
    return unfold();
  }

 private:
  // First run through t at w.
  std::size_t witness_run(std::size_t w, const TypeSet& t) const {
    for (std::size_t i = 0; i < q_.run_count(); ++i)
      if (q_.runs[i][w] == t) return i;
    throw std::logic_error("type without a run");
  }

  void select_worlds() {
    std::size_t w0 = SIZE_MAX;
    for (std::size_t w = 0; w < q_.world_count() && w0 == SIZE_MAX; ++w)
      for (const TypeSet& t : q_.states[w].types)
        if (t.test(cl_.root())) {
          w0 = w;
          break;
        }
    root_ = w0;
    kept_.assign(q_.world_count(), false);
    kept_[w0] = true;
    std::vector<std::size_t> level{w0};
    while (!level.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t w : level)
        for (const TypeSet& t : q_.states[w].types) {
          const std::size_t s = witness_run(w, t);
          for (std::size_t d : cl_.diamonds()) {
            if (!t.test(d)) continue;
            for (std::size_t v : ch_[w])
              if (q_.runs[s][v].test(cl_.child(d))) {
                if (!kept_[v]) {
                  kept_[v] = true;
                  next.push_back(v);
                }
                break;
              }
          }
        }
      level = std::move(next);
    }
  }

  void select_indices() {
    std::vector<bool> chosen(q_.run_count(), false);
    for (std::size_t w = 0; w < q_.world_count(); ++w) {
      if (!kept_[w]) continue;
      const Quasistate& st = q_.states[w];
      for (std::size_t k = 0; k < st.types.size(); ++k) {
        Natural need = st.multiplicity[k];
        for (std::size_t i = 0; i < q_.run_count() && need > 0; ++i)
          if (q_.runs[i][w] == st.types[k]) {
            chosen[i] = true;
            need -= 1;
          }
      }
    }
    for (std::size_t i = 0; i < chosen.size(); ++i)
      if (chosen[i]) indices_.push_back(i);
  }

  // Trans(I', w): swap each index with the witness run of its type at w.
  std::vector<Transposition> transpositions(std::size_t w) const {
    std::vector<Transposition> out{{0, 0}};  // identity
    for (std::size_t i : indices_) {
      std::size_t s = witness_run(w, q_.runs[i][w]);
      if (s == i) continue;
      Transposition tau{std::min(i, s), std::max(i, s)};
      if (std::find(out.begin(), out.end(), tau) == out.end()) out.push_back(tau);
    }
    return out;
  }

  Quasimodel unfold() {
    struct Node {
      std::size_t world;
      std::vector<Transposition> sigma;
    };
    std::vector<Node> nodes{{root_, {}}};
    Quasimodel out;
    out.parent.push_back(Quasimodel::kNoParent);
    std::vector<std::vector<Transposition>> trans(q_.world_count());
    for (std::size_t w = 0; w < q_.world_count(); ++w)
      if (kept_[w]) trans[w] = transpositions(w);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const std::size_t w = nodes[n].world;
      for (std::size_t v : ch_[w]) {
        if (!kept_[v]) continue;
        for (const Transposition& tau : trans[w]) {
          Node child{v, nodes[n].sigma};
          if (tau.first != tau.second) child.sigma.push_back(tau);
          nodes.push_back(std::move(child));
          out.parent.push_back(n);
        }
      }
    }
    out.runs.assign(indices_.size(), std::vector<TypeSet>(nodes.size()));
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      out.states.push_back(q_.states[nodes[n].world]);
      for (std::size_t k = 0; k < indices_.size(); ++k)
        out.runs[k][n] = q_.runs[permute(nodes[n].sigma, indices_[k])][nodes[n].world];
    }
    std::vector<std::size_t> origin(nodes.size());
    for (std::size_t n = 0; n < nodes.size(); ++n) origin[n] = nodes[n].world;
    return drop_duplicate_siblings(out, origin);
  }

  // Identical sibling subtrees witness the same diamonds and leave every
  // per-world run count unchanged, so one copy suffices.
  static Quasimodel drop_duplicate_siblings(const Quasimodel& q, const std::vector<std::size_t>& origin) {
    const std::size_t W = q.world_count();
    const auto ch = q.children();
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::map<TypeSet, std::size_t> type_ids;
    std::vector<std::size_t> id(W);
    // Children always follow their parent, so reverse order is bottom-up.
    for (std::size_t n = W; n-- > 0;) {
      std::vector<std::size_t> key{origin[n]};
      for (std::size_t i = 0; i < q.run_count(); ++i)
        key.push_back(type_ids.emplace(q.runs[i][n], type_ids.size()).first->second);
      std::vector<std::size_t> kids;
      for (std::size_t c : ch[n]) kids.push_back(id[c]);
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      key.push_back(SIZE_MAX);
      key.insert(key.end(), kids.begin(), kids.end());
      id[n] = ids.emplace(std::move(key), ids.size()).first->second;
    }
    std::vector<std::size_t> keep{0};
    Quasimodel out;
    out.parent.push_back(Quasimodel::kNoParent);
    for (std::size_t k = 0; k < keep.size(); ++k) {
      std::vector<std::size_t> seen;
      for (std::size_t c : ch[keep[k]]) {
        if (std::find(seen.begin(), seen.end(), id[c]) != seen.end()) continue;
        seen.push_back(id[c]);
        keep.push_back(c);
        out.parent.push_back(k);
      }
    }
    out.runs.assign(q.run_count(), std::vector<TypeSet>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
      out.states.push_back(q.states[keep[k]]);
      for (std::size_t i = 0; i < q.run_count(); ++i) out.runs[i][k] = q.runs[i][keep[k]];
    }
    return out;
  }

  const Quasimodel& q_;
  const Closure& cl_;
  std::vector<std::vector<std::size_t>> ch_;
  std::size_t root_ = 0;
  std::vector<bool> kept_;
  std::vector<std::size_t> indices_;
};

Natural pow2(std::size_t e) { return Natural(1) << e; }

}  // namespace

Quasimodel prune(const Quasimodel& q, const Formula& phi) {
  Closure cl(phi);
  if (auto v = validate_quasimodel(q, cl); !v)
    throw std::invalid_argument("invalid quasimodel (" + v.clause + "): " + v.detail);
  return Pruner(q, cl).run();
}

Natural pruning_world_bound(std::size_t n, std::size_t m, const Natural& c) {
  const std::size_t mm = std::max<std::size_t>(m, 1);
  return Natural(mm * mm) * pow2(8 * n * mm) * (c > 0 ? c : Natural(1));
}

Natural pruning_index_bound(std::size_t n, std::size_t m, const Natural& c) {
  const std::size_t mm = std::max<std::size_t>(m, 1);
  return Natural(mm) * pow2(5 * n * mm) * (c > 0 ? c : Natural(1));
}

}  // namespace qml
