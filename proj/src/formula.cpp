#include "qml/formula.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

namespace qml {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t bound_hash(const Natural& c) {
  if (c <= Natural(UINT64_MAX)) return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(c));
  return std::hash<std::string>{}(c.str());
}

}  // namespace

Formula Formula::atom(std::string predicate) {
  if (predicate.empty()) throw std::invalid_argument("empty predicate symbol");
  std::size_t h = mix(1, std::hash<std::string>{}(predicate));
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(predicate), 0, {}, h}));
}

Formula Formula::neg(const Formula& f) {
  return Formula(std::make_shared<const Node>(Node{Op::Neg, {}, 0, {f}, mix(2, f.hash())}));
}

Formula Formula::conj(const Formula& l, const Formula& r) {
  std::size_t h = mix(mix(3, l.hash()), r.hash());
  return Formula(std::make_shared<const Node>(Node{Op::And, {}, 0, {l, r}, h}));
}

Formula Formula::diamond(const Formula& f) {
  return Formula(std::make_shared<const Node>(Node{Op::Diamond, {}, 0, {f}, mix(4, f.hash())}));
}

Formula Formula::count_leq(Natural bound, const Formula& body) {
  if (bound < 0) throw std::invalid_argument("negative counting bound");
  std::size_t h = mix(mix(5, bound_hash(bound)), body.hash());
  return Formula(std::make_shared<const Node>(Node{Op::CountLeq, {}, std::move(bound), {body}, h}));
}

Formula Formula::disj(const Formula& l, const Formula& r) { return neg(conj(neg(l), neg(r))); }

Formula Formula::implies(const Formula& l, const Formula& r) { return neg(conj(l, neg(r))); }

Formula Formula::iff(const Formula& l, const Formula& r) { return conj(implies(l, r), implies(r, l)); }

Formula Formula::box(const Formula& f) { return neg(diamond(neg(f))); }

Formula Formula::exists(const Formula& body) { return neg(count_leq(0, body)); }

Formula Formula::forall(const Formula& body) { return count_leq(0, neg(body)); }

Formula Formula::count_geq(const Natural& bound, const Formula& body) {
  if (bound == 0) return top();
  return neg(count_leq(bound - 1, body));
}

Formula Formula::top(const std::string& predicate) {
  Formula p = atom(predicate);
  return disj(p, neg(p));
}

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty conjunction");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::box_n(const Formula& f, unsigned k) {
  Formula acc = f;
  for (unsigned i = 0; i < k; ++i) acc = box(acc);
  return acc;
}

Formula Formula::box_upto(const Formula& f, unsigned m) {
  std::vector<Formula> parts;
  for (unsigned k = 0; k <= m; ++k) parts.push_back(box_n(f, k));
  return conj_all(parts);
}

const std::string& Formula::predicate() const {
  if (op() != Op::Atom) throw std::logic_error("predicate() on non-atom");
  return node_->predicate;
}

const Natural& Formula::bound() const {
  if (op() != Op::CountLeq) throw std::logic_error("bound() on non-counting formula");
  return node_->bound;
}

const Formula& Formula::child() const {
  if (node_->kids.empty()) throw std::logic_error("child() on atom");
  return node_->kids[0];
}

const Formula& Formula::lhs() const {
  if (op() != Op::And) throw std::logic_error("lhs() on non-conjunction");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (op() != Op::And) throw std::logic_error("rhs() on non-conjunction");
  return node_->kids[1];
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Atom:
      return a.node_->predicate == b.node_->predicate;
    case Op::CountLeq:
      return a.node_->bound == b.node_->bound && a.child() == b.child();
    case Op::And:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    default:
      return a.child() == b.child();
  }
}

namespace {

void collect_predicates(const Formula& f, std::set<std::string>& out,
                        std::unordered_set<const void*>& seen) {
  if (!seen.insert(f.identity()).second) return;
  switch (f.op()) {
    case Op::Atom:
      out.insert(f.predicate());
      return;
    case Op::And:
      collect_predicates(f.lhs(), out, seen);
      collect_predicates(f.rhs(), out, seen);
      return;
    default:
      collect_predicates(f.child(), out, seen);
  }
}

}  // namespace

std::vector<std::string> predicates_of(const Formula& f) {
  std::set<std::string> out;
  std::unordered_set<const void*> seen;
  collect_predicates(f, out, seen);
  return {out.begin(), out.end()};
}

bool mentions_predicate(const Formula& f, const std::string& predicate) {
  auto ps = predicates_of(f);
  return std::binary_search(ps.begin(), ps.end(), predicate);
}

std::string fresh_symbol(const std::string& prefix, const std::vector<std::string>& taken) {
  for (std::size_t k = 0;; ++k) {
    std::string s = prefix + std::to_string(k);
    if (std::find(taken.begin(), taken.end(), s) == taken.end()) return s;
  }
}

}  // namespace qml
