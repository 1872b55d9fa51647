#include "qml/cdcl.hpp"

#include <algorithm>

namespace qml::sat {

namespace {

double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (std::uint64_t i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

std::uint32_t Solver::new_var() {
  auto v = static_cast<std::uint32_t>(assign_.size());
  assign_.push_back(kUndef);
  phase_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  activity_.push_back(0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_pos_.push_back(-1);
  heap_insert(v);
  return v;
}

bool Solver::add_clause(std::vector<Lit> clause) {
  if (unsat_) return false;
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    Lit l = clause[i];
    if (i + 1 < clause.size() && clause[i + 1] == negate(l)) return true;  // tautology
    std::int8_t v = lit_value(l);
    if (v == 1) return true;
    if (v == kUndef) kept.push_back(l);
  }
  if (kept.empty()) {
    unsat_ = true;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) unsat_ = true;
    return !unsat_;
  }
  clauses_.push_back(Clause{std::move(kept), false, 0, false});
  attach(static_cast<ClauseRef>(clauses_.size() - 1));
  return true;
}

void Solver::attach(ClauseRef cr) {
  const Clause& c = clauses_[cr];
  watches_[c.lits[0]].push_back(cr);
  watches_[c.lits[1]].push_back(cr);
}

void Solver::enqueue(Lit l, ClauseRef reason) {
  std::uint32_t v = var_of(l);
  assign_[v] = (l & 1u) ? 0 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::ClauseRef Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = negate(p);
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      ClauseRef cr = ws[i++];
      Clause& c = clauses_[cr];
      if (c.deleted) continue;
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      if (lit_value(c.lits[0]) == 1) {
        ws[j++] = cr;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (lit_value(c.lits[k]) != 0) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1]].push_back(cr);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = cr;
      if (lit_value(c.lits[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return cr;
      }
      enqueue(c.lits[0], cr);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::bump_var(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::bump_clause(Clause& c) {
  c.activity += clause_inc_;
  if (c.activity > 1e20) {
    for (auto& cl : clauses_)
      if (cl.learnt) cl.activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

bool Solver::redundant(Lit l, std::uint32_t) {
  ClauseRef r = reason_[var_of(l)];
  if (r == kNoReason) return false;
  for (std::size_t k = 1; k < clauses_[r].lits.size(); ++k) {
    std::uint32_t u = var_of(clauses_[r].lits[k]);
    if (!seen_[u] && level_[u] > 0) return false;
  }
  return true;
}

void Solver::analyze(ClauseRef conflict, std::vector<Lit>& learnt, std::uint32_t& back_level) {
  learnt.assign(1, 0);
  int path = 0;
  Lit p = 0;
  bool have_p = false;
  std::size_t index = trail_.size();
  ClauseRef cr = conflict;
  do {
    Clause& c = clauses_[cr];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
      Lit q = c.lits[k];
      std::uint32_t v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      bump_var(v);
      seen_[v] = 1;
      if (level_[v] >= decision_level())
        ++path;
      else
        learnt.push_back(q);
    }
    do {
      --index;
    } while (!seen_[var_of(trail_[index])]);
    p = trail_[index];
    have_p = true;
    cr = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = negate(p);

  analyze_clear_.assign(learnt.begin(), learnt.end());
  std::size_t j = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (!redundant(learnt[i], 0)) learnt[j++] = learnt[i];
  learnt.resize(j);

  back_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    back_level = level_[var_of(learnt[1])];
  }
  for (Lit l : analyze_clear_) seen_[var_of(l)] = 0;
}

void Solver::backtrack(std::uint32_t level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i > trail_lim_[level]; --i) {
    std::uint32_t v = var_of(trail_[i - 1]);
    phase_[v] = assign_[v] == 1;
    assign_[v] = kUndef;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

std::int64_t Solver::pick_branch() {
  while (!heap_.empty()) {
    std::uint32_t v = heap_pop();
    if (assign_[v] == kUndef) return v;
  }
  return -1;
}

void Solver::reduce_learnts() {
  std::vector<ClauseRef> learnts;
  for (ClauseRef cr = 0; cr < clauses_.size(); ++cr)
    if (clauses_[cr].learnt && !clauses_[cr].deleted) learnts.push_back(cr);
  std::sort(learnts.begin(), learnts.end(),
            [&](ClauseRef a, ClauseRef b) { return clauses_[a].activity < clauses_[b].activity; });
  for (std::size_t i = 0; i < learnts.size() / 2; ++i) {
    Clause& c = clauses_[learnts[i]];
    if (c.lits.size() <= 2) continue;
    std::uint32_t v = var_of(c.lits[0]);
    bool locked = reason_[v] == learnts[i] && lit_value(c.lits[0]) == 1;
    if (locked) continue;
    c.deleted = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
    --learnt_count_;
  }
}

Result Solver::solve() {
  if (unsat_) return Result::Unsat;
  if (propagate() != kNoReason) {
    unsat_ = true;
    return Result::Unsat;
  }
  std::uint64_t restart = 0;
  double max_learnts = std::max<double>(clauses_.size() / 3.0, 2000.0);
  std::vector<Lit> learnt;
  while (true) {
    std::uint64_t budget = static_cast<std::uint64_t>(luby(2, restart++) * 100);
    std::uint64_t local = 0;
    while (true) {
      ClauseRef conflict = propagate();
      if (conflict != kNoReason) {
        ++conflicts_;
        ++local;
        if (decision_level() == 0) {
          unsat_ = true;
          return Result::Unsat;
        }
        std::uint32_t back_level = 0;
        analyze(conflict, learnt, back_level);
        backtrack(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          clauses_.push_back(Clause{learnt, true, 0, false});
          auto cr = static_cast<ClauseRef>(clauses_.size() - 1);
          attach(cr);
          bump_clause(clauses_[cr]);
          ++learnt_count_;
          enqueue(learnt[0], cr);
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999;
        continue;
      }
      if (local >= budget) {
        backtrack(0);
        break;
      }
      if (static_cast<double>(learnt_count_) >= max_learnts + static_cast<double>(trail_.size())) {
        reduce_learnts();
        max_learnts *= 1.1;
      }
      std::int64_t next = pick_branch();
      if (next < 0) {
        model_.assign(assign_.size(), false);
        for (std::size_t v = 0; v < assign_.size(); ++v) model_[v] = assign_[v] == 1;
        backtrack(0);
        return Result::Sat;
      }
      auto v = static_cast<std::uint32_t>(next);
      trail_lim_.push_back(trail_.size());
      enqueue(phase_[v] ? pos(v) : neg(v), kNoReason);
    }
  }
}

// ── Heap ──

void Solver::heap_insert(std::uint32_t v) {
  heap_pos_[v] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  std::uint32_t v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<std::int64_t>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<std::int64_t>(i);
}

void Solver::heap_down(std::size_t i) {
  std::uint32_t v = heap_[i];
  while (true) {
    std::size_t l = 2 * i + 1;
    if (l >= heap_.size()) break;
    std::size_t best = l;
    if (l + 1 < heap_.size() && heap_less(heap_[l + 1], heap_[l])) best = l + 1;
    if (!heap_less(heap_[best], v)) break;
    heap_[i] = heap_[best];
    heap_pos_[heap_[i]] = static_cast<std::int64_t>(i);
    i = best;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<std::int64_t>(i);
}

std::uint32_t Solver::heap_pop() {
  std::uint32_t top = heap_[0];
  heap_pos_[top] = -1;
  std::uint32_t last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace qml::sat
