#include "qml/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "qml/check.hpp"
#include "qml/closure.hpp"
#include "qml/syntax.hpp"

namespace qml {

std::string describe(const SearchBounds& b) {
  return "max_worlds=" + std::to_string(b.max_worlds) + " max_objects=" + std::to_string(b.max_objects) +
         " max_depth=" + std::to_string(b.max_depth) + " max_branching=" + std::to_string(b.max_branching);
}

// ── Tree shapes ──

namespace {

struct CanonTree {
  std::string code;
  std::size_t size;
  std::vector<std::size_t> kids;  // indices into the previous depth level, canonical order
};

// levels[d] = all canonical trees of depth ≤ d, sorted by (size, code).
std::vector<std::vector<CanonTree>> canonical_trees(std::size_t max_worlds, std::size_t max_depth,
                                                    std::size_t max_branching) {
  std::vector<std::vector<CanonTree>> levels;
  levels.push_back({CanonTree{"()", 1, {}}});
  for (std::size_t d = 1; d <= max_depth; ++d) {
    const auto& prev = levels.back();
    std::vector<CanonTree> cur;
    std::vector<std::size_t> pick;
    // Non-increasing index sequences over prev, so each multiset appears once.
    auto rec = [&](auto&& self, std::size_t max_index, std::size_t size) -> void {
      CanonTree t;
      t.size = size;
      t.kids = pick;
      std::vector<std::string> codes;
      for (auto k : pick) codes.push_back(prev[k].code);
      std::sort(codes.begin(), codes.end());
      t.code = "(";
      for (auto& c : codes) t.code += c;
      t.code += ")";
      std::sort(t.kids.begin(), t.kids.end(),
                [&](std::size_t a, std::size_t b) { return prev[a].code < prev[b].code; });
      cur.push_back(std::move(t));
      if (pick.size() == max_branching) return;
      for (std::size_t k = 0; k <= max_index && k < prev.size(); ++k) {
        if (size + prev[k].size > max_worlds) continue;
        pick.push_back(k);
        self(self, k, size + prev[k].size);
        pick.pop_back();
      }
    };
    if (!prev.empty()) rec(rec, prev.size() - 1, 1);
    std::sort(cur.begin(), cur.end(), [](const CanonTree& a, const CanonTree& b) {
      return a.size != b.size ? a.size < b.size : a.code < b.code;
    });
    cur.erase(std::unique(cur.begin(), cur.end(),
                          [](const CanonTree& a, const CanonTree& b) { return a.code == b.code; }),
              cur.end());
    levels.push_back(std::move(cur));
  }
  return levels;
}

TreeShape to_shape(const std::vector<std::vector<CanonTree>>& levels, std::size_t depth, std::size_t index) {
  TreeShape s;
  struct Item {
    std::size_t level, index, parent;
  };
  std::deque<Item> queue{{depth, index, 0}};
  std::size_t max_level_seen = 0;
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    std::size_t id = s.parent.size();
    s.parent.push_back(it.parent);
    s.children.emplace_back();
    if (id != 0) s.children[it.parent].push_back(id);
    const CanonTree& t = levels[it.level][it.index];
    for (auto k : t.kids) queue.push_back({it.level - 1, k, id});
  }
  // depth by walking parents
  std::vector<std::size_t> dep(s.size(), 0);
  for (std::size_t v = 1; v < s.size(); ++v) {
    dep[v] = dep[s.parent[v]] + 1;
    max_level_seen = std::max(max_level_seen, dep[v]);
  }
  s.depth = max_level_seen;
  return s;
}

}  // namespace

std::vector<TreeShape> enumerate_tree_shapes(std::size_t max_worlds, std::size_t max_depth,
                                             std::size_t max_branching) {
  if (max_worlds == 0) return {};
  auto levels = canonical_trees(max_worlds, max_depth, max_branching);
  std::vector<TreeShape> out;
  for (std::size_t i = 0; i < levels[max_depth].size(); ++i) out.push_back(to_shape(levels, max_depth, i));
  return out;
}

// ── Compact models ──

namespace {

struct Profile {
  std::uint32_t member;  // worlds where the object exists
  std::uint64_t val;     // bit w * P + p: object in P_p at w
};

std::vector<std::uint32_t> memberships(const TreeShape& s, DomainRegime regime) {
  const std::size_t n = s.size();
  const std::uint32_t all = n == 32 ? UINT32_MAX : (1u << n) - 1;
  std::vector<std::uint32_t> out;
  if (regime == DomainRegime::Constant) return {all};
  for (std::uint32_t m = 1; m <= all; ++m) {
    bool ok = true;
    for (std::size_t v = 1; v < n && ok; ++v) {
      bool in_v = m >> v & 1, in_p = m >> s.parent[v] & 1;
      if (regime == DomainRegime::Expanding && in_p && !in_v) ok = false;
      if (regime == DomainRegime::Decreasing && in_v && !in_p) ok = false;
    }
    if (ok) out.push_back(m);
    if (m == all) break;
  }
  return out;
}

std::vector<Profile> profiles(const TreeShape& s, std::size_t preds, DomainRegime regime) {
  std::vector<Profile> out;
  for (std::uint32_t m : memberships(s, regime)) {
    std::uint64_t cells = 0;
    for (std::size_t w = 0; w < s.size(); ++w)
      if (m >> w & 1)
        for (std::size_t p = 0; p < preds; ++p) cells |= std::uint64_t{1} << (w * preds + p);
    // every submask of cells, ascending
    std::uint64_t sub = 0;
    while (true) {
      out.push_back({m, sub});
      if (sub == cells) break;
      sub = (sub - cells) & cells;
    }
  }
  return out;
}

struct CompactModel {
  const TreeShape* shape = nullptr;
  std::size_t preds = 0;
  std::size_t objects = 0;
  std::vector<std::uint64_t> domain;  // per world
  std::vector<std::uint64_t> atoms;   // w * preds + p
  std::uint64_t all = 0;

  std::size_t world_count() const { return shape->size(); }
  const std::vector<std::size_t>& children(std::size_t w) const { return shape->children[w]; }
  std::uint64_t domain_of(std::size_t w) const { return domain[w]; }
};

struct CompactView {
  const CompactModel& m;
  std::uint64_t zero = 0;
  std::size_t world_count() const { return m.world_count(); }
  const std::vector<std::size_t>& children(std::size_t w) const { return m.children(w); }
  const std::uint64_t& domain(std::size_t w) const { return m.domain[w]; }
  const std::uint64_t& universe() const { return m.all; }
  const std::uint64_t& empty() const { return zero; }
  const std::uint64_t& atom(std::size_t w, std::size_t slot) const { return m.atoms[w * m.preds + slot]; }
};

// Calls visit(model) for every regime-respecting compact model; stops when
// visit returns false. Returns false if stopped.
template <class Visit>
bool for_each_compact(std::size_t preds, const SearchBounds& bounds, std::size_t depth, DomainRegime regime,
                      Visit&& visit) {
  if (bounds.max_objects > 64) throw std::invalid_argument("oracle enumeration supports at most 64 objects");
  auto shapes = enumerate_tree_shapes(bounds.max_worlds, depth, bounds.max_branching);
  for (const TreeShape& shape : shapes) {
    if (shape.size() > 32 || shape.size() * std::max<std::size_t>(preds, 1) > 64)
      throw std::invalid_argument("frame too large for oracle enumeration");
    const auto prof = profiles(shape, preds, regime);
    const std::size_t nw = shape.size();
    const std::uint32_t all_worlds = nw == 32 ? UINT32_MAX : (1u << nw) - 1;
    CompactModel cm;
    cm.shape = &shape;
    cm.preds = preds;
    for (std::size_t k = 1; k <= bounds.max_objects; ++k) {
      cm.objects = k;
      cm.all = k == 64 ? UINT64_MAX : (std::uint64_t{1} << k) - 1;
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        std::uint32_t cover = 0;
        for (std::size_t o = 0; o < k; ++o) cover |= prof[idx[o]].member;
        if (cover == all_worlds) {
          cm.domain.assign(nw, 0);
          cm.atoms.assign(nw * preds, 0);
          for (std::size_t o = 0; o < k; ++o) {
            const Profile& p = prof[idx[o]];
            const std::uint64_t bit = std::uint64_t{1} << o;
            for (std::size_t w = 0; w < nw; ++w)
              if (p.member >> w & 1) cm.domain[w] |= bit;
            for (std::uint64_t v = p.val; v; v &= v - 1) cm.atoms[std::countr_zero(v)] |= bit;
          }
          if (!visit(cm)) return false;
        }
        // next non-decreasing tuple
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] + 1 == prof.size()) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t o = pos; o < k; ++o) idx[o] = idx[pos - 1];
      }
    }
  }
  return true;
}

KripkeModel materialize(const CompactModel& cm, const std::vector<std::string>& signature) {
  KripkeModel m;
  const std::size_t nw = cm.world_count();
  for (std::size_t w = 0; w < nw; ++w) m.worlds.push_back(default_world_name(w));
  for (std::size_t w = 0; w < nw; ++w)
    for (auto c : cm.children(w)) m.edges.emplace_back(w, c);
  for (std::size_t o = 0; o < cm.objects; ++o) m.objects.push_back(default_object_name(o));
  auto to_set = [&](std::uint64_t bits) {
    ObjectSet s(cm.objects);
    for (std::size_t o = 0; o < cm.objects; ++o)
      if (bits >> o & 1) s.set(o);
    return s;
  };
  for (std::size_t w = 0; w < nw; ++w) m.domain.push_back(to_set(cm.domain[w]));
  for (std::size_t p = 0; p < signature.size(); ++p) {
    auto& ext = m.interp[signature[p]];
    for (std::size_t w = 0; w < nw; ++w) ext.push_back(to_set(cm.atoms[w * cm.preds + p]));
  }
  return m;
}

}  // namespace

void enumerate_models(const std::vector<std::string>& signature, const SearchBounds& bounds,
                      DomainRegime regime, const std::function<bool(const KripkeModel&)>& visit) {
  for_each_compact(signature.size(), bounds, bounds.max_depth, regime,
                   [&](const CompactModel& cm) { return visit(materialize(cm, signature)); });
}

std::uint64_t count_models(std::size_t predicates, const SearchBounds& bounds, DomainRegime regime) {
  std::uint64_t n = 0;
  for_each_compact(predicates, bounds, bounds.max_depth, regime, [&](const CompactModel&) {
    ++n;
    return true;
  });
  return n;
}

std::optional<SatWitness> oracle_sat(const Formula& phi, DomainRegime regime, const SearchBounds& bounds,
                                     CountingScope scope) {
  Closure cl(phi);
  const auto& signature = cl.predicates();
  const std::size_t depth = std::min<std::size_t>(bounds.max_depth, cl.modal_depth());
  std::vector<std::uint64_t> ext;
  std::optional<SatWitness> found;
  for_each_compact(signature.size(), bounds, depth, regime, [&](const CompactModel& cm) {
    detail::evaluate(cl, CompactView{cm}, scope, ext);
    std::uint64_t hit = ext[cl.root() * cm.world_count()] & cm.domain[0];
    if (!hit) return true;
    found = SatWitness{materialize(cm, signature), 0, static_cast<std::size_t>(std::countr_zero(hit))};
    return false;
  });
  if (found && !check(found->model, found->world, found->object, phi, scope))
    throw std::logic_error("oracle witness rejected by the model checker");
  return found;
}

}  // namespace qml
