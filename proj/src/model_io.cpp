#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qml/model.hpp"

namespace qml {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class Reader {
 public:
  KripkeModel run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (!line.empty()) handle(line, line_no);
      start = end + 1;
    }
    if (!have_worlds_) throw ModelFormatError("missing 'worlds:' line", line_no);
    if (!have_objects_) throw ModelFormatError("missing 'objects:' line", line_no);
    return std::move(m_);
  }

 private:
  void handle(std::string_view line, std::size_t ln) {
    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ModelFormatError("expected 'key: values'", ln);
    auto head = split_ws(line.substr(0, colon));
    auto values = split_ws(line.substr(colon + 1));
    if (head.empty()) throw ModelFormatError("missing key", ln);
    const std::string& key = head[0];
    if (key == "worlds" && head.size() == 1) {
      if (have_worlds_) throw ModelFormatError("duplicate 'worlds:' line", ln);
      have_worlds_ = true;
      for (auto& w : values) {
        if (!world_ids_.emplace(w, m_.worlds.size()).second)
          throw ModelFormatError("duplicate world " + w, ln);
        m_.worlds.push_back(w);
      }
      if (have_objects_) m_.domain.assign(m_.worlds.size(), ObjectSet(m_.objects.size()));
    } else if (key == "objects" && head.size() == 1) {
      if (have_objects_) throw ModelFormatError("duplicate 'objects:' line", ln);
      have_objects_ = true;
      for (auto& o : values) {
        if (!object_ids_.emplace(o, m_.objects.size()).second)
          throw ModelFormatError("duplicate object " + o, ln);
        m_.objects.push_back(o);
      }
      if (have_worlds_) m_.domain.assign(m_.worlds.size(), ObjectSet(m_.objects.size()));
    } else if (key == "edges" && head.size() == 1) {
      need_worlds(ln);
      for (auto& e : values) {
        auto arrow = e.find("->");
        if (arrow == std::string::npos) throw ModelFormatError("malformed edge " + e, ln);
        m_.edges.emplace_back(world(e.substr(0, arrow), ln), world(e.substr(arrow + 2), ln));
      }
    } else if (key == "domain" && head.size() == 2) {
      need_worlds(ln);
      need_objects(ln);
      std::size_t w = world(head[1], ln);
      if (!domain_seen_.insert(w).second)
        throw ModelFormatError("duplicate domain line for " + head[1], ln);
      for (auto& o : values) m_.domain[w].set(object(o, ln));
    } else if (key == "pred" && head.size() == 3) {
      need_worlds(ln);
      need_objects(ln);
      auto& ext = m_.interp[head[1]];
      if (ext.empty()) ext.assign(m_.worlds.size(), ObjectSet(m_.objects.size()));
      std::size_t w = world(head[2], ln);
      for (auto& o : values) ext[w].set(object(o, ln));
    } else {
      throw ModelFormatError("unrecognised line", ln);
    }
  }

  void need_worlds(std::size_t ln) const {
    if (!have_worlds_) throw ModelFormatError("'worlds:' must come first", ln);
  }
  void need_objects(std::size_t ln) const {
    if (!have_objects_) throw ModelFormatError("'objects:' must precede domains and predicates", ln);
  }
  std::size_t world(const std::string& name, std::size_t ln) const {
    auto it = world_ids_.find(name);
    if (it == world_ids_.end()) throw ModelFormatError("unknown world " + name, ln);
    return it->second;
  }
  std::size_t object(const std::string& name, std::size_t ln) const {
    auto it = object_ids_.find(name);
    if (it == object_ids_.end()) throw ModelFormatError("unknown object " + name, ln);
    return it->second;
  }

  KripkeModel m_;
  bool have_worlds_ = false, have_objects_ = false;
  std::unordered_map<std::string, std::size_t> world_ids_, object_ids_;
  std::unordered_set<std::size_t> domain_seen_;
};

void append_members(std::string& out, const KripkeModel& m, const ObjectSet& s) {
  for (auto i = s.find_first(); i != ObjectSet::npos; i = s.find_next(i)) {
    out += ' ';
    out += m.objects[i];
  }
}

}  // namespace

KripkeModel read_model(std::string_view text) { return Reader().run(text); }

std::string write_model(const KripkeModel& m) {
  std::string out = "worlds:";
  for (auto& w : m.worlds) out += ' ' + w;
  out += "\nedges:";
  auto edges = m.edges;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto [u, v] : edges) out += ' ' + m.worlds[u] + "->" + m.worlds[v];
  out += "\nobjects:";
  for (auto& o : m.objects) out += ' ' + o;
  out += '\n';
  for (std::size_t w = 0; w < m.worlds.size(); ++w) {
    out += "domain " + m.worlds[w] + ":";
    append_members(out, m, m.domain[w]);
    out += '\n';
  }
  for (const auto& [p, ext] : m.interp) {
    for (std::size_t w = 0; w < ext.size(); ++w) {
      if (ext[w].none()) continue;
      out += "pred " + p + " " + m.worlds[w] + ":";
      append_members(out, m, ext[w]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace qml
