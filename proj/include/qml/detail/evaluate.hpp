#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "qml/closure.hpp"
#include "qml/model.hpp"

namespace qml {

enum class CountingScope { Actualist, Possibilist };

namespace detail {

inline std::size_t popcount(std::uint64_t s) { return static_cast<std::size_t>(std::popcount(s)); }
inline std::size_t popcount(const ObjectSet& s) { return s.count(); }

// Bounds above this never bind: no model here has that many objects.
inline std::uint64_t clamp_bound(const Natural& c) {
  static const Natural cap(UINT32_MAX);
  return c > cap ? UINT32_MAX : static_cast<std::uint64_t>(c);
}

// Fills ext[s * W + w] with the objects a such that M,w ⊨^a sub_s, for every
// closure index s and world w. Closed formulas (counting) get all or nothing.
//
// View provides: world_count(), children(w), domain(w), universe(), empty(),
// atom(w, slot).
template <class Set, class View>
void evaluate(const Closure& cl, const View& m, CountingScope scope, std::vector<Set>& ext) {
  const std::size_t nw = m.world_count();
  ext.assign(cl.size() * nw, m.empty());
  const Set& all = m.universe();
  for (std::size_t s = 0; s < cl.size(); ++s) {
    Set* row = &ext[s * nw];
    switch (cl.op(s)) {
      case Op::Atom: {
        std::size_t slot = cl.predicate_slot(s);
        for (std::size_t w = 0; w < nw; ++w) row[w] = m.atom(w, slot);
        break;
      }
      case Op::Neg: {
        const Set* c = &ext[cl.child(s) * nw];
        for (std::size_t w = 0; w < nw; ++w) row[w] = all & ~c[w];
        break;
      }
      case Op::And: {
        const Set* l = &ext[cl.child(s) * nw];
        const Set* r = &ext[cl.rhs(s) * nw];
        for (std::size_t w = 0; w < nw; ++w) row[w] = l[w] & r[w];
        break;
      }
      case Op::Diamond: {
        const Set* c = &ext[cl.child(s) * nw];
        for (std::size_t w = 0; w < nw; ++w)
          for (std::size_t v : m.children(w)) row[w] |= c[v];
        break;
      }
      case Op::CountLeq: {
        const Set* c = &ext[cl.child(s) * nw];
        std::uint64_t bound = clamp_bound(cl.bound(s));
        for (std::size_t w = 0; w < nw; ++w) {
          std::size_t n = scope == CountingScope::Actualist ? popcount(c[w] & m.domain(w)) : popcount(c[w]);
          if (n <= bound) row[w] = all;
        }
        break;
      }
    }
  }
}

}  // namespace detail
}  // namespace qml
