// Runs the ten acceptance criteria and prints one PASS/FAIL line each.
// Exit status is 0 when every criterion outside kKnownFailures passes and
// every known failure still fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus_cache.hpp"
#include "qml/bimodal.hpp"
#include "qml/check.hpp"
#include "qml/corpus.hpp"
#include "qml/enumerate.hpp"
#include "qml/quasimodel.hpp"
#include "qml/reductions.hpp"
#include "qml/sat_constant.hpp"
#include "qml/syntax.hpp"
#include "qml/tableau.hpp"

namespace {

using namespace qml;

// θ_n does not force a large root domain; see the project notes.
const std::set<int> kKnownFailures{6};

const SearchBounds kBounds{4, 3, 2, 2};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int shown = 0;
  void fail(const std::string& what) {
    pass = false;
    if (shown++ < 3) detail << (shown > 1 ? "; " : "") << what;
  }
};

bool reduced_sat(const Formula& phi, DomainRegime r, const SearchBounds& b) {
  return sat_constant(reduce_to_constant(phi, r).formula, b).has_value();
}

bool first_order_sat(const Formula& phi, DomainRegime r, const SearchBounds& b) {
  return r == DomainRegime::Constant ? sat_constant(phi, b).has_value() : reduced_sat(phi, r, b);
}

std::string yn(bool b) { return b ? "SAT" : "UNSAT"; }

void criterion1(Outcome& o) {
  std::size_t sat = 0;
  for (const Formula& phi : testing::corpus()) {
    const auto a = sat_constant(phi, kBounds);
    const bool b = oracle_sat(phi, DomainRegime::Constant, kBounds).has_value();
    sat += b;
    if (a.has_value() != b) o.fail(print(phi) + ": search " + yn(a.has_value()) + ", oracle " + yn(b));
    if (a && !check(a->model, a->world, a->object, phi)) o.fail(print(phi) + ": witness fails check");
  }
  if (o.pass) o.detail << testing::corpus().size() << " formulas, " << sat << " SAT";
}

void criterion2(Outcome& o) {
  std::size_t sat = 0;
  for (const Formula& phi : testing::corpus()) {
    ExpandingOptions opt;
    opt.domain_limit = kBounds.max_objects;
    const bool t = sat_expanding(phi, opt).has_value();
    const bool r = reduced_sat(phi, DomainRegime::Expanding, kBounds);
    const bool a = oracle_sat(phi, DomainRegime::Expanding, kBounds).has_value();
    sat += a;
    if (t != a || r != a) o.fail(print(phi) + ": tableau " + yn(t) + ", reduction " + yn(r) + ", oracle " + yn(a));
  }
  if (o.pass) o.detail << sat << " SAT";
}

void criterion3(Outcome& o) {
  std::size_t sat = 0;
  for (const Formula& phi : testing::corpus()) {
    const bool r = reduced_sat(phi, DomainRegime::Decreasing, kBounds);
    const bool a = oracle_sat(phi, DomainRegime::Decreasing, kBounds).has_value();
    sat += a;
    if (r != a) o.fail(print(phi) + ": reduction " + yn(r) + ", oracle " + yn(a));
  }
  if (o.pass) o.detail << sat << " SAT";
}

// Shared by criteria 4 and 5.
std::vector<std::pair<Formula, Quasimodel>> round_trip(Outcome& o) {
  std::vector<std::pair<Formula, Quasimodel>> out;
  for (const Formula& phi : testing::corpus()) {
    const auto w = oracle_sat(phi, DomainRegime::Constant, kBounds);
    if (!w) continue;
    Quasimodel q = model_to_quasimodel(w->model, phi);
    const QuasiVerdict v = validate_quasimodel(q, Closure(phi));
    if (!v) {
      o.fail(print(phi) + ": " + v.clause + " " + v.detail);
      continue;
    }
    const SatWitness back = quasimodel_to_model(q, phi);
    if (!check(back.model, back.world, back.object, phi)) o.fail(print(phi) + ": rebuilt model fails check");
    out.emplace_back(phi, std::move(q));
  }
  if (o.pass) o.detail << out.size() << " quasimodels";
  return out;
}

void criterion5(Outcome& o, const std::vector<std::pair<Formula, Quasimodel>>& qms) {
  std::size_t max_w = 0, max_i = 0;
  for (const auto& [phi, q] : qms) {
    const Quasimodel p = prune(q, phi);
    const QuasiVerdict v = validate_quasimodel(p, Closure(phi));
    if (!v) {
      o.fail(print(phi) + ": pruned " + v.clause + " " + v.detail);
      continue;
    }
    const SatWitness back = quasimodel_to_model(p, phi);
    if (!check(back.model, back.world, back.object, phi)) o.fail(print(phi) + ": pruned model fails check");
    const FormulaMetrics m = metrics(phi, EncodingMode::Binary);
    if (Natural(p.world_count()) > pruning_world_bound(m.n_sub, m.modal_depth, m.capacity))
      o.fail(print(phi) + ": |W| above bound");
    if (Natural(p.run_count()) > pruning_index_bound(m.n_sub, m.modal_depth, m.capacity))
      o.fail(print(phi) + ": |I| above bound");
    max_w = std::max(max_w, p.world_count());
    max_i = std::max(max_i, p.run_count());
  }
  if (o.pass) o.detail << qms.size() << " pruned, max |W| " << max_w << ", max |I| " << max_i;
}

void criterion6(Outcome& o) {
  const Formula t1 = gen_theta(1);
  const bool t1_2 = oracle_sat(t1, DomainRegime::Decreasing, {7, 2, 2, 2}).has_value();
  const bool t1_1 = oracle_sat(t1, DomainRegime::Decreasing, {7, 1, 2, 2}).has_value();
  const Formula t2 = reduce_to_constant(gen_theta(2), DomainRegime::Decreasing).formula;
  const bool t2_4 = sat_constant(t2, {15, 4, 3, 2}).has_value();
  const bool t2_3 = sat_constant(t2, {15, 3, 3, 2}).has_value();
  o.pass = t1_2 && !t1_1 && t2_4 && !t2_3;
  o.detail << "theta_1: 2 objects " << yn(t1_2) << ", 1 object " << yn(t1_1) << "; theta_2: 4 objects " << yn(t2_4)
           << ", 3 objects " << yn(t2_3);
}

void criterion7(Outcome& o) {
  const auto ku = enumerate_bimodal(3, 2, {BOp::Neg, BOp::And, BOp::DiaH, BOp::DiaU});
  for (const Bimodal& phi : ku) {
    const bool a = ku_oracle(phi, 3);
    const bool b = reduced_sat(translate_ku(phi).formula, DomainRegime::Decreasing, {4, 3, 1, 3});
    if (a != b) o.fail("K_u " + print(phi));
  }
  const auto prod = enumerate_bimodal(3, 2, {BOp::Neg, BOp::And, BOp::DiaH, BOp::DiaV});
  for (Vertical v : {Vertical::S5, Vertical::Diff})
    for (auto r : {DomainRegime::Constant, DomainRegime::Expanding, DomainRegime::Decreasing})
      for (const Bimodal& phi : prod) {
        const bool a = product_oracle(phi, v, r, {4, 3, 3});
        const Formula tr = v == Vertical::S5 ? translate_product_s5(phi) : translate_product_diff(phi).formula;
        const bool b = first_order_sat(tr, r, {4, 3, horizontal_depth(phi), 3});
        if (a != b)
          o.fail(std::string(v == Vertical::S5 ? "S5 " : "Diff ") + regime_name(r) + " " + print(phi));
      }
  std::size_t pins = 0;
  for (unsigned n : {1u, 2u, 3u}) {
    const SearchBounds b{4, n, 2, 2};
    for (const Formula& phi : testing::corpus()) {
      const bool c = sat_constant(phi, b).has_value();
      const Formula pinned = pin_domain(phi, n);
      for (auto r : {DomainRegime::Expanding, DomainRegime::Decreasing}) {
        if (c != reduced_sat(pinned, r, b)) o.fail("pin N=" + std::to_string(n) + " " + print(phi));
        ++pins;
      }
    }
  }
  if (o.pass) o.detail << ku.size() << " K_u, " << 6 * prod.size() << " product, " << pins << " pinned checks";
}

// Monotone clone: b copies a everywhere once C+1 objects already share a's
// profile; truth at every existing point is unchanged.
KripkeModel add_clone(const KripkeModel& m, std::size_t a) {
  KripkeModel r = m;
  const std::size_t b = m.object_count();
  r.objects.push_back(default_object_name(b));
  auto grow = [&](ObjectSet& s) {
    s.resize(b + 1);
    s[b] = s[a];
  };
  for (auto& d : r.domain) grow(d);
  for (auto& [p, ext] : r.interp)
    for (auto& s : ext) grow(s);
  return r;
}

KripkeModel random_model(std::mt19937_64& rng) {
  KripkeModel m;
  const std::size_t worlds = 1 + draw(rng, 4), objects = 1 + draw(rng, 3);
  for (std::size_t w = 0; w < worlds; ++w) m.worlds.push_back(default_world_name(w));
  for (std::size_t w = 1; w < worlds; ++w) m.edges.emplace_back(draw(rng, w), w);
  for (std::size_t a = 0; a < objects; ++a) m.objects.push_back(default_object_name(a));
  for (std::size_t w = 0; w < worlds; ++w) {
    ObjectSet d(objects);
    for (std::size_t a = 0; a < objects; ++a) d[a] = draw(rng, 4) != 0;
    if (d.none()) d.set(draw(rng, objects));
    m.domain.push_back(d);
  }
  for (const char* p : {"P0", "P1"}) {
    auto& ext = m.interp[p];
    for (std::size_t w = 0; w < worlds; ++w) {
      ObjectSet s(objects);
      for (std::size_t a = 0; a < objects; ++a) s[a] = m.domain[w][a] && draw(rng, 2);
      ext.push_back(s);
    }
  }
  return m;
}

void criterion8(Outcome& o) {
  std::mt19937_64 rng(testing::kCorpusSeed);
  const auto& corpus = testing::corpus();
  std::size_t points = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Formula& phi = corpus[draw(rng, corpus.size())];
    KripkeModel m = random_model(rng);
    const std::size_t a = draw(rng, m.object_count());
    const auto copies = static_cast<std::size_t>(capacity(phi)) + 1;
    for (std::size_t k = 0; k < copies; ++k) m = add_clone(m, a);
    const KripkeModel m2 = add_clone(m, a);
    const Evaluation e1(m, phi), e2(m2, phi);
    for (std::size_t w = 0; w < m.world_count(); ++w)
      for (std::size_t x = 0; x < m.object_count(); ++x)
        if (m.domain[w][x]) {
          ++points;
          if (e1.holds(w, x) != e2.holds(w, x)) o.fail("trial " + std::to_string(trial) + " " + print(phi));
        }
  }
  if (o.pass) o.detail << "200 trials, " << points << " points";
}

void criterion9(Outcome& o) {
  for (const Formula& phi : testing::corpus()) {
    const std::string text = print(phi);
    const Formula u = parse(text, EncodingMode::Unary), b = parse(text, EncodingMode::Binary);
    if (u != phi || b != phi || print(u) != text) {
      o.fail("round trip " + text);
      continue;
    }
    if (sat_constant(u, kBounds).has_value() != sat_constant(b, kBounds).has_value()) o.fail("constant " + text);
    ExpandingOptions opt;
    opt.domain_limit = kBounds.max_objects;
    if (sat_expanding(u, opt).has_value() != sat_expanding(b, opt).has_value()) o.fail("expanding " + text);
    if (reduced_sat(u, DomainRegime::Decreasing, kBounds) != reduced_sat(b, DomainRegime::Decreasing, kBounds))
      o.fail("decreasing " + text);
  }
  if (o.pass) o.detail << testing::corpus().size() << " formulas, 3 regimes";
}

void criterion10(Outcome& o) {
  const std::string cmd = std::string("QML='") + QML_CLI_PATH + "' FIXTURES='" + QML_CLI_FIXTURES + "' bash '" +
                          QML_CLI_FIXTURES + "/exit_codes.sh' >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  o.pass = status == 0;
  o.detail << "scripted suite exit status " << status;
}

}  // namespace

int main() {
  int unexpected = 0;
  std::vector<std::pair<Formula, Quasimodel>> qms;
  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria{
      {1, criterion1},
      {2, criterion2},
      {3, criterion3},
      {4, [&](Outcome& o) { qms = round_trip(o); }},
      {5, [&](Outcome& o) { criterion5(o, qms); }},
      {6, criterion6},
      {7, criterion7},
      {8, criterion8},
      {9, criterion9},
      {10, criterion10},
  };
  for (const auto& [id, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known = kKnownFailures.count(id) > 0;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail.str() << "; "
              << static_cast<int>(secs * 10) / 10.0 << "s)" << (known && !o.pass ? " [known failure]" : "")
              << std::endl;
    if (o.pass == known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
