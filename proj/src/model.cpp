#include "qml/model.hpp"

namespace qml {

const char* regime_name(DomainRegime r) {
  switch (r) {
    case DomainRegime::Constant: return "constant";
    case DomainRegime::Expanding: return "expanding";
    case DomainRegime::Decreasing: return "decreasing";
    case DomainRegime::Varying: return "varying";
  }
  return "?";
}

DomainRegime parse_regime(std::string_view name) {
  if (name == "constant") return DomainRegime::Constant;
  if (name == "expanding") return DomainRegime::Expanding;
  if (name == "decreasing") return DomainRegime::Decreasing;
  if (name == "varying") return DomainRegime::Varying;
  throw std::invalid_argument("unknown domain regime: " + std::string(name));
}

std::vector<std::vector<std::size_t>> KripkeModel::successors() const {
  std::vector<std::vector<std::size_t>> out(worlds.size());
  for (auto [u, v] : edges) out.at(u).push_back(v);
  return out;
}

std::size_t KripkeModel::world_index(const std::string& name) const {
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == name) return i;
  throw std::out_of_range("unknown world: " + name);
}

std::size_t KripkeModel::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return i;
  throw std::out_of_range("unknown object: " + name);
}

std::string default_world_name(std::size_t i) { return "w" + std::to_string(i); }

std::string default_object_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "o" + std::to_string(i);
}

namespace {

std::string members(const KripkeModel& m, const ObjectSet& s) {
  std::string out = "{";
  for (auto i = s.find_first(); i != ObjectSet::npos; i = s.find_next(i)) {
    if (out.size() > 1) out += ' ';
    out += m.objects[i];
  }
  return out + "}";
}

ModelVerdict fail(std::string msg) { return {false, std::move(msg)}; }

}  // namespace

ModelVerdict validate_model(const KripkeModel& m, DomainRegime regime) {
  const std::size_t nw = m.worlds.size(), no = m.objects.size();
  if (nw == 0) return fail("no worlds");
  if (m.domain.size() != nw) return fail("domain function does not cover every world");
  for (auto [u, v] : m.edges)
    if (u >= nw || v >= nw) return fail("edge endpoint out of range");
  for (std::size_t w = 0; w < nw; ++w) {
    if (m.domain[w].size() != no) return fail("domain bit-width mismatch at " + m.worlds[w]);
    if (m.domain[w].none()) return fail("empty domain at " + m.worlds[w]);
  }
  for (const auto& [p, ext] : m.interp) {
    if (ext.size() != nw) return fail("interpretation of " + p + " does not cover every world");
    for (std::size_t w = 0; w < nw; ++w) {
      if (ext[w].size() != no) return fail("interpretation bit-width mismatch for " + p);
      if (!ext[w].is_subset_of(m.domain[w]))
        return fail("interp(" + m.worlds[w] + "," + p + ") = " + members(m, ext[w]) +
                    " not within d(" + m.worlds[w] + ") = " + members(m, m.domain[w]));
    }
  }
  switch (regime) {
    case DomainRegime::Varying:
      break;
    case DomainRegime::Constant:
      for (std::size_t w = 1; w < nw; ++w)
        if (m.domain[w] != m.domain[0])
          return fail("constant domain violated: d(" + m.worlds[0] + ") = " + members(m, m.domain[0]) +
                      ", d(" + m.worlds[w] + ") = " + members(m, m.domain[w]));
      break;
    case DomainRegime::Expanding:
      for (auto [u, v] : m.edges)
        if (!m.domain[u].is_subset_of(m.domain[v]))
          return fail("expanding domain violated on " + m.worlds[u] + "->" + m.worlds[v] + ": " +
                      members(m, m.domain[u]) + " not within " + members(m, m.domain[v]));
      break;
    case DomainRegime::Decreasing:
      for (auto [u, v] : m.edges)
        if (!m.domain[v].is_subset_of(m.domain[u]))
          return fail("decreasing domain violated on " + m.worlds[u] + "->" + m.worlds[v] + ": " +
                      members(m, m.domain[v]) + " not within " + members(m, m.domain[u]));
      break;
  }
  return {};
}

}  // namespace qml
