#pragma once

#include <cstdint>
#include <vector>

namespace qml::sat {

// Literal encoding: 2*v for v, 2*v+1 for ¬v.
using Lit = std::uint32_t;
inline Lit pos(std::uint32_t v) { return 2 * v; }
inline Lit neg(std::uint32_t v) { return 2 * v + 1; }
inline Lit negate(Lit l) { return l ^ 1u; }
inline std::uint32_t var_of(Lit l) { return l >> 1; }

enum class Result { Sat, Unsat };

// Conflict-driven clause learning: two watched literals, first-UIP learning
// with minimisation, VSIDS, phase saving, Luby restarts, learnt-clause
// reduction by activity.
class Solver {
 public:
  std::uint32_t new_var();
  std::uint32_t var_count() const { return static_cast<std::uint32_t>(assign_.size()); }
  // Returns false if the formula became trivially unsatisfiable.
  bool add_clause(std::vector<Lit> clause);
  Result solve();
  // Model value after Sat.
  bool value(std::uint32_t v) const { return model_[v]; }
  bool value_lit(Lit l) const { return model_[var_of(l)] != (l & 1u); }

  std::uint64_t conflicts() const { return conflicts_; }

 private:
  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    double activity = 0;
    bool deleted = false;
  };
  using ClauseRef = std::uint32_t;
  static constexpr ClauseRef kNoReason = UINT32_MAX;
  static constexpr std::int8_t kUndef = -1;

  std::int8_t lit_value(Lit l) const {
    std::int8_t a = assign_[var_of(l)];
    return a == kUndef ? kUndef : static_cast<std::int8_t>(a ^ static_cast<std::int8_t>(l & 1u));
  }
  void enqueue(Lit l, ClauseRef reason);
  ClauseRef propagate();
  void analyze(ClauseRef conflict, std::vector<Lit>& learnt, std::uint32_t& back_level);
  bool redundant(Lit l, std::uint32_t abstract_levels);
  void backtrack(std::uint32_t level);
  std::int64_t pick_branch();
  void bump_var(std::uint32_t v);
  void bump_clause(Clause& c);
  void attach(ClauseRef cr);
  void reduce_learnts();
  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }

  // heap over variables keyed by activity
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();
  bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity_[a] > activity_[b]; }

  std::vector<Clause> clauses_;
  std::vector<std::vector<ClauseRef>> watches_;
  std::vector<std::int8_t> assign_;
  std::vector<std::uint8_t> phase_;
  std::vector<std::uint32_t> level_;
  std::vector<ClauseRef> reason_;
  std::vector<double> activity_;
  std::vector<std::uint8_t> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<std::uint32_t> heap_;
  std::vector<std::int64_t> heap_pos_;
  std::vector<bool> model_;
  std::vector<Lit> analyze_stack_, analyze_clear_;
  double var_inc_ = 1.0, clause_inc_ = 1.0;
  bool unsat_ = false;
  std::uint64_t conflicts_ = 0;
  std::size_t learnt_count_ = 0;
};

}  // namespace qml::sat
