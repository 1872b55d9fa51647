#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace qml {

using ObjectSet = boost::dynamic_bitset<>;

enum class DomainRegime { Constant, Expanding, Decreasing, Varying };

const char* regime_name(DomainRegime r);
DomainRegime parse_regime(std::string_view name);

// Finite first-order Kripke model. Worlds and objects are indices; names are
// kept for I/O only. Every ObjectSet has objects.size() bits.
struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::string> objects;
  std::vector<ObjectSet> domain;
  // predicate -> per-world extension
  std::map<std::string, std::vector<ObjectSet>> interp;

  std::size_t world_count() const { return worlds.size(); }
  std::size_t object_count() const { return objects.size(); }
  std::vector<std::vector<std::size_t>> successors() const;
  std::size_t world_index(const std::string& name) const;
  std::size_t object_index(const std::string& name) const;
};

struct ModelVerdict {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

ModelVerdict validate_model(const KripkeModel& m, DomainRegime regime);

// Default names: worlds w0, w1, …; objects a … z, then o26, o27, ….
std::string default_world_name(std::size_t i);
std::string default_object_name(std::size_t i);

class ModelFormatError : public std::runtime_error {
 public:
  ModelFormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

KripkeModel read_model(std::string_view text);
std::string write_model(const KripkeModel& m);

}  // namespace qml
