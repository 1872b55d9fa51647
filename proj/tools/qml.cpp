#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qml/bimodal.hpp"
#include "qml/check.hpp"
#include "qml/corpus.hpp"
#include "qml/enumerate.hpp"
#include "qml/reductions.hpp"
#include "qml/sat_constant.hpp"
#include "qml/syntax.hpp"
#include "qml/tableau.hpp"

using namespace qml;

namespace {

enum Exit { kOk = 0, kUnsat = 1, kInput = 2, kRefused = 3, kInternal = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

struct FormulaInput {
  std::string text;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("formula", text, "Formula text");
    cmd->add_option("--file", file, "Read the formula from a file ('-' for stdin)");
  }
  std::string read(bool stdin_default = false) const {
    if (!file.empty()) return trim(slurp(file));
    if (!text.empty()) return text;
    if (stdin_default) return trim(slurp("-"));
    throw InputError("no formula given");
  }
};

Formula parse_formula(const std::string& text, EncodingMode mode) {
  try {
    return parse(text, mode);
  } catch (const ParseError& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
}

Bimodal parse_bimodal_formula(const std::string& text) {
  try {
    return parse_bimodal(text);
  } catch (const BimodalParseError& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
}

const char* encoding_name(EncodingMode m) { return m == EncodingMode::Unary ? "unary" : "binary"; }

void print_metrics(const Formula& f, EncodingMode mode) {
  const FormulaMetrics mt = metrics(f, mode);
  std::cout << encoding_name(mode) << ": size " << mt.size << " n_sub " << mt.n_sub << " md " << mt.modal_depth
            << " cpt " << mt.capacity << '\n';
}

// Test hook: complement every atom extension inside the domains.
void corrupt(KripkeModel& m) {
  for (auto& [p, ext] : m.interp)
    for (std::size_t w = 0; w < ext.size(); ++w) ext[w] = m.domain[w] & ~ext[w];
}

struct SatOptions {
  FormulaInput input;
  std::string regime = "constant";
  std::string engine;
  std::optional<std::size_t> worlds, objects, depth, branching;
  std::string witness;
  std::size_t n_cap = 4096;
  bool trace = false;
  bool corrupt_witness = false;
  std::string encoding = "binary";
};

int cmd_sat(const SatOptions& o) {
  const EncodingMode mode = o.encoding == "unary" ? EncodingMode::Unary : EncodingMode::Binary;
  const Formula phi = parse_formula(o.input.read(), mode);
  const DomainRegime regime = parse_regime(o.regime);
  std::string engine = o.engine;
  if (engine.empty()) {
    switch (regime) {
      case DomainRegime::Constant: engine = "search"; break;
      case DomainRegime::Expanding: engine = "tableau"; break;
      case DomainRegime::Decreasing: engine = "reduction"; break;
      default: engine = "oracle"; break;
    }
  }
  if (engine == "search" && regime != DomainRegime::Constant) throw InputError("engine search requires --regime constant");
  if (engine == "tableau" && regime != DomainRegime::Expanding) throw InputError("engine tableau requires --regime expanding");
  if (engine == "reduction" && regime != DomainRegime::Expanding && regime != DomainRegime::Decreasing)
    throw InputError("engine reduction requires --regime expanding or decreasing");

  const bool explicit_bounds = o.worlds || o.objects || o.depth || o.branching;
  SearchBounds b = engine == "oracle" || explicit_bounds ? SearchBounds{} : default_constant_bounds(phi);
  if (o.worlds) b.max_worlds = *o.worlds;
  if (o.objects) b.max_objects = *o.objects;
  if (o.depth) b.max_depth = *o.depth;
  if (o.branching) b.max_branching = *o.branching;

  std::optional<SatWitness> w;
  std::string bounds_text = describe(b);
  if (engine == "oracle") {
    w = oracle_sat(phi, regime, b);
  } else if (engine == "search") {
    w = sat_constant(phi, b);
  } else if (engine == "tableau") {
    ExpandingOptions eo;
    eo.n_cap = o.n_cap;
    eo.trace = o.trace ? &std::cerr : nullptr;
    if (o.objects) eo.domain_limit = *o.objects;
    try {
      w = sat_expanding(phi, eo);
    } catch (const TableauRefusal& e) {
      std::cout << "REFUSED: " << e.what() << '\n';
      return kRefused;
    }
    Natural n = domain_cap(phi);
    if (o.objects && n > *o.objects) n = *o.objects;
    bounds_text = "N=" + n.str() + ", depth=" + std::to_string(modal_depth(phi));
  } else if (engine == "reduction") {
    const TranslationResult t = reduce_to_constant(phi, regime);
    SearchBounds rb = b;
    rb.max_depth = std::min<std::size_t>(b.max_depth, modal_depth(phi));
    if (auto cw = sat_constant(t.formula, rb)) {
      w = SatWitness{existence_model(cw->model, t.fresh_symbols.front().predicate, modal_depth(phi)), 0, cw->object};
    }
  } else {
    throw InputError("unknown engine " + engine);
  }

  if (!w) {
    std::cout << "UNSAT within bounds (" << bounds_text << ")\n";
    return kUnsat;
  }
  if (o.corrupt_witness) corrupt(w->model);
  const ModelVerdict v = validate_model(w->model, regime);
  bool holds = false;
  try {
    holds = v && check(w->model, w->world, w->object, phi);
  } catch (const std::out_of_range&) {
  }
  if (!holds) {
    std::cerr << "internal error: witness failed re-validation"
              << (v ? std::string() : " (" + v.diagnostic + ")") << '\n';
    return kInternal;
  }
  std::cout << "SAT at world " << w->model.worlds[w->world] << " object " << w->model.objects[w->object] << '\n';
  const std::string text = write_model(w->model);
  if (o.witness.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.witness);
    if (!out) throw InputError("cannot write " + o.witness);
    out << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-variable counting modal logic toolkit"};
  app.require_subcommand(1);

  FormulaInput parse_in;
  std::string parse_encoding;
  auto* parse_cmd = app.add_subcommand("parse", "Print the canonical form and metrics");
  parse_in.attach(parse_cmd);
  parse_cmd->add_option("--encoding", parse_encoding, "Only this encoding's metrics")
      ->check(CLI::IsMember({"unary", "binary"}));

  FormulaInput check_in;
  std::string model_path, check_regime = "varying";
  std::optional<std::string> world, object;
  auto* check_cmd = app.add_subcommand("check", "Model-check a formula");
  check_in.attach(check_cmd);
  check_cmd->add_option("--model", model_path, "Model file")->required();
  check_cmd->add_option("--world", world, "World name (omit for a table)");
  check_cmd->add_option("--object", object, "Object name (omit for a table)");
  check_cmd->add_option("--regime", check_regime, "Regime the model must satisfy");

  SatOptions sat;
  auto* sat_cmd = app.add_subcommand("sat", "Bounded satisfiability");
  sat.input.attach(sat_cmd);
  sat_cmd->add_option("--regime", sat.regime)->check(CLI::IsMember({"constant", "expanding", "decreasing", "varying"}));
  sat_cmd->add_option("--engine", sat.engine)->check(CLI::IsMember({"oracle", "search", "tableau", "reduction"}));
  sat_cmd->add_option("--max-worlds", sat.worlds);
  sat_cmd->add_option("--max-objects", sat.objects);
  sat_cmd->add_option("--max-depth", sat.depth);
  sat_cmd->add_option("--max-branching", sat.branching);
  sat_cmd->add_option("--encoding", sat.encoding)->check(CLI::IsMember({"unary", "binary"}));
  sat_cmd->add_option("--n-cap", sat.n_cap, "Tableau refusal ceiling for the domain cap");
  sat_cmd->add_option("--witness", sat.witness, "Write the witness model here");
  sat_cmd->add_flag("--trace", sat.trace, "Tableau trace on stderr");
  sat_cmd->add_flag("--corrupt-witness", sat.corrupt_witness)->group("");

  FormulaInput tr_in;
  std::string source;
  unsigned long pin_n = 1;
  std::string tr_regime = "expanding";
  bool zeta_apart = false;
  auto* tr_cmd = app.add_subcommand("translate", "Satisfiability-preserving translations");
  tr_in.attach(tr_cmd);
  tr_cmd->add_option("--source", source)
      ->required()
      ->check(CLI::IsMember({"ku", "kxs5", "kxdiff", "pin", "relativize", "reduce"}));
  tr_cmd->add_option("--n", pin_n, "Domain size for pin")->check(CLI::PositiveNumber);
  tr_cmd->add_option("--regime", tr_regime, "Target regime for reduce")
      ->check(CLI::IsMember({"expanding", "decreasing"}));
  tr_cmd->add_flag("--zeta", zeta_apart, "Print zeta and the body on separate lines");

  std::string gen_kind;
  unsigned theta_n = 0;
  std::uint64_t seed = 7;
  std::size_t size = 100;
  auto* gen_cmd = app.add_subcommand("gen", "Generate formulas");
  gen_cmd->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"theta", "corpus"}));
  gen_cmd->add_option("n", theta_n, "Index for theta");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--size", size);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*parse_cmd) {
      const Formula f = parse_formula(parse_in.read(true), EncodingMode::Binary);
      std::cout << print(f) << '\n';
      if (parse_encoding != "binary") print_metrics(f, EncodingMode::Unary);
      if (parse_encoding != "unary") print_metrics(f, EncodingMode::Binary);
      return kOk;
    }
    if (*check_cmd) {
      const Formula f = parse_formula(check_in.read(), EncodingMode::Binary);
      KripkeModel m;
      try {
        m = read_model(slurp(model_path));
      } catch (const ModelFormatError& e) {
        throw InputError(std::string("model error: ") + e.what());
      }
      if (auto v = validate_model(m, parse_regime(check_regime)); !v) throw InputError("invalid model: " + v.diagnostic);
      if (world.has_value() != object.has_value()) throw InputError("--world and --object go together");
      if (world) {
        std::size_t w, a;
        try {
          w = m.world_index(*world);
          a = m.object_index(*object);
        } catch (const std::exception& e) {
          throw InputError(e.what());
        }
        if (!m.domain[w].test(a)) throw InputError("object " + *object + " is not in the domain of " + *world);
        std::cout << (check(m, w, a, f) ? "true" : "false") << '\n';
        return kOk;
      }
      const Evaluation ev(m, f);
      for (std::size_t w = 0; w < m.world_count(); ++w)
        for (std::size_t a = 0; a < m.object_count(); ++a)
          if (m.domain[w].test(a))
            std::cout << m.worlds[w] << ' ' << m.objects[a] << ' ' << (ev.holds(w, a) ? "true" : "false") << '\n';
      return kOk;
    }
    if (*sat_cmd) return cmd_sat(sat);
    if (*tr_cmd) {
      const std::string text = tr_in.read(true);
      auto emit = [&](const TranslationResult& t) {
        if (zeta_apart) {
          std::cout << "zeta: " << print(t.zeta) << "\nbody: " << print(t.body) << '\n';
        } else {
          std::cout << print(t.formula) << '\n';
        }
        for (const FreshSymbol& s : t.fresh_symbols)
          std::cerr << "# " << s.predicate << (s.origin.empty() ? "" : " = " + s.origin) << '\n';
      };
      if (source == "ku") {
        emit(translate_ku(parse_bimodal_formula(text)));
      } else if (source == "kxdiff") {
        emit(translate_product_diff(parse_bimodal_formula(text)));
      } else if (source == "kxs5") {
        std::cout << print(translate_product_s5(parse_bimodal_formula(text))) << '\n';
      } else if (source == "pin") {
        std::cout << print(pin_domain(parse_formula(text, EncodingMode::Binary), pin_n)) << '\n';
      } else if (source == "relativize") {
        const Formula f = parse_formula(text, EncodingMode::Binary);
        std::cout << print(relativize(f, fresh_symbol("E_", predicates_of(f)))) << '\n';
      } else {
        emit(reduce_to_constant(parse_formula(text, EncodingMode::Binary), parse_regime(tr_regime)));
      }
      return kOk;
    }
    if (*gen_cmd) {
      if (gen_kind == "theta") {
        std::cout << print(gen_theta(theta_n)) << '\n';
      } else {
        for (const Formula& f : generate_corpus(seed, size)) std::cout << print(f) << '\n';
      }
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
