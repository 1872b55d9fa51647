#include "qml/check.hpp"

#include <stdexcept>

namespace qml {

namespace {

class ModelView {
 public:
  ModelView(const KripkeModel& m, const Closure& cl)
      : m_(m), succ_(m.successors()), universe_(m.object_count()), empty_(m.object_count()) {
    universe_.set();
    for (const auto& p : cl.predicates()) {
      auto it = m.interp.find(p);
      atoms_.push_back(it == m.interp.end() ? nullptr : &it->second);
    }
  }

  std::size_t world_count() const { return m_.world_count(); }
  const std::vector<std::size_t>& children(std::size_t w) const { return succ_[w]; }
  const ObjectSet& domain(std::size_t w) const { return m_.domain[w]; }
  const ObjectSet& universe() const { return universe_; }
  const ObjectSet& empty() const { return empty_; }
  const ObjectSet& atom(std::size_t w, std::size_t slot) const {
    return atoms_[slot] ? (*atoms_[slot])[w] : empty_;
  }

 private:
  const KripkeModel& m_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<const std::vector<ObjectSet>*> atoms_;
  ObjectSet universe_, empty_;
};

}  // namespace

Evaluation::Evaluation(const KripkeModel& m, const Formula& phi, CountingScope scope)
    : closure_(phi), worlds_(m.world_count()) {
  ModelView view(m, closure_);
  detail::evaluate(closure_, view, scope, ext_);
}

bool Evaluation::holds(std::size_t world, std::size_t object) const {
  return holds(world, object, closure_.root());
}

boost::dynamic_bitset<> Evaluation::type_of(std::size_t world, std::size_t object) const {
  boost::dynamic_bitset<> t(closure_.size());
  for (std::size_t s = 0; s < closure_.size(); ++s)
    if (holds(world, object, s)) t.set(s);
  return t;
}

bool check(const KripkeModel& m, std::size_t world, std::size_t object, const Formula& phi,
           CountingScope scope) {
  if (world >= m.world_count()) throw std::out_of_range("world not in model");
  if (object >= m.object_count() || !m.domain[world].test(object))
    throw std::out_of_range("object " + (object < m.object_count() ? m.objects[object] : std::to_string(object)) +
                            " not in the domain of " + m.worlds[world]);
  return Evaluation(m, phi, scope).holds(world, object);
}

}  // namespace qml
