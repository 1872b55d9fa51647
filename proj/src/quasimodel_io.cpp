#include <sstream>
#include <stdexcept>

#include "qml/quasimodel.hpp"

// Text layout:
//   quasimodel <closure size>
//   world <w> parent <p | ->
//   type <w> <k> mult <μ> : <formula indices>
//   run <i> : <per world: type index in T_w, or {indices} when outside T_w>

namespace qml {

namespace {

void write_set(std::ostream& os, const TypeSet& t) {
  for (auto i = t.find_first(); i != TypeSet::npos; i = t.find_next(i)) os << ' ' << i;
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw std::runtime_error("quasimodel line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string write_quasimodel(const Quasimodel& q) {
  std::ostringstream os;
  std::size_t bits = 0;
  for (const auto& st : q.states)
    if (!st.types.empty()) bits = st.types.front().size();
  os << "quasimodel " << bits << '\n';
  for (std::size_t w = 0; w < q.world_count(); ++w) {
    os << "world " << w << " parent ";
    if (q.parent[w] == Quasimodel::kNoParent)
      os << '-';
    else
      os << q.parent[w];
    os << '\n';
    const Quasistate& st = q.states[w];
    for (std::size_t k = 0; k < st.types.size(); ++k) {
      os << "type " << w << ' ' << k << " mult " << st.multiplicity[k] << " :";
      write_set(os, st.types[k]);
      os << '\n';
    }
  }
  for (std::size_t i = 0; i < q.run_count(); ++i) {
    os << "run " << i << " :";
    for (std::size_t w = 0; w < q.runs[i].size(); ++w) {
      const auto& types = q.states[w].types;
      std::size_t k = 0;
      while (k < types.size() && types[k] != q.runs[i][w]) ++k;
      if (k < types.size()) {
        os << ' ' << k;
      } else {
        os << " {";
        write_set(os, q.runs[i][w]);
        os << " }";
      }
    }
    os << '\n';
  }
  return os.str();
}

Quasimodel read_quasimodel(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0, bits = 0;
  bool header = false;
  Quasimodel q;

  auto read_set = [&](std::istream& is, const std::string& stop) {
    TypeSet t(bits);
    std::string tok;
    while (is >> tok && tok != stop) {
      std::size_t v = std::stoul(tok);
      if (v >= bits) bad(lineno, "formula index " + tok + " out of range");
      t.set(v);
    }
    return t;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    try {
      if (kw == "quasimodel") {
        if (!(ls >> bits)) bad(lineno, "missing closure size");
        header = true;
        continue;
      }
      if (!header) bad(lineno, "missing header");
      if (kw == "world") {
        std::size_t w;
        std::string p, kwp;
        if (!(ls >> w >> kwp >> p) || kwp != "parent") bad(lineno, "expected: world <w> parent <p>");
        if (w != q.world_count()) bad(lineno, "worlds must be listed in order");
        q.parent.push_back(p == "-" ? Quasimodel::kNoParent : std::stoul(p));
        q.states.emplace_back();
      } else if (kw == "type") {
        std::size_t w, k;
        std::string mk, mult, colon;
        if (!(ls >> w >> k >> mk >> mult >> colon) || mk != "mult" || colon != ":")
          bad(lineno, "expected: type <w> <k> mult <m> : <indices>");
        if (w >= q.world_count() || k != q.states[w].types.size()) bad(lineno, "types must follow their world in order");
        q.states[w].multiplicity.emplace_back(mult);
        q.states[w].types.push_back(read_set(ls, ""));
      } else if (kw == "run") {
        std::size_t i;
        std::string colon;
        if (!(ls >> i >> colon) || colon != ":") bad(lineno, "expected: run <i> : <types>");
        if (i != q.run_count()) bad(lineno, "runs must be listed in order");
        std::vector<TypeSet> run;
        std::string tok;
        while (ls >> tok) {
          const std::size_t w = run.size();
          if (w >= q.world_count()) bad(lineno, "run longer than the world list");
          if (tok == "{") {
            run.push_back(read_set(ls, "}"));
          } else {
            std::size_t k = std::stoul(tok);
            if (k >= q.states[w].types.size()) bad(lineno, "type index " + tok + " out of range");
            run.push_back(q.states[w].types[k]);
          }
        }
        q.runs.push_back(std::move(run));
      } else {
        bad(lineno, "unknown keyword " + kw);
      }
    } catch (const std::invalid_argument&) {
      bad(lineno, "malformed number");
    } catch (const std::out_of_range&) {
      bad(lineno, "number out of range");
    }
  }
  if (!header) bad(lineno, "missing header");
  return q;
}

}  // namespace qml
