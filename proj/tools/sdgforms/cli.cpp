#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "sdg/classical_oracle.hpp"
#include "sdg/errors.hpp"
#include "sdg/harness.hpp"
#include "sdg/io.hpp"
#include "sdg/operators.hpp"

namespace sdg {

namespace {

const std::vector<std::string> kOps = {"dplus",   "dtimes", "dcontour", "mcdefect",
                                       "bracket", "form",   "dplus2",   "classical"};

struct VerifyOptions {
  std::optional<std::string> suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> base_dim;
  std::optional<std::size_t> fiber_dim;
  std::optional<std::string> rep;
  std::optional<std::string> groupoid;
  std::optional<std::vector<std::size_t>> degrees;
  std::optional<long> bound;
  std::optional<std::string> output;
  std::optional<std::string> config;
  bool no_timing = false;
  bool json = false;
};

struct EvalOptions {
  std::string op;
  std::string input;
};

int run_verify(const VerifyOptions& opt, std::ostream& out) {
  CheckConfig cfg;
  std::string suite = "all";
  std::optional<std::string> output;
  bool json = false;
  if (opt.config) {
    const Json file = load_document(*opt.config);
    cfg = config_from_json(file, cfg);
    if (file.contains("suite")) suite = file.at("suite").get<std::string>();
    if (file.contains("output")) output = file.at("output").get<std::string>();
    if (file.contains("json")) json = file.at("json").get<bool>();
  }
  if (opt.suite) suite = *opt.suite;
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.base_dim) cfg.base_dim = *opt.base_dim;
  if (opt.fiber_dim) cfg.fiber_dim = *opt.fiber_dim;
  if (opt.bound) cfg.bound = *opt.bound;
  if (opt.degrees) cfg.degrees = *opt.degrees;
  if (opt.rep) cfg = config_from_json(Json{{"rep", *opt.rep}}, cfg);
  if (opt.groupoid) cfg = config_from_json(Json{{"groupoid", *opt.groupoid}}, cfg);
  if (opt.no_timing) cfg.timing = false;
  if (opt.output) output = opt.output;
  json = json || opt.json;
  cfg.validate();

  std::vector<CheckReport> reports;
  if (suite == "all") {
    reports = run_suite(cfg);
  } else {
    if (!is_check(suite)) throw InputError("unknown suite '" + suite + "'");
    reports.push_back(run_check(suite, cfg));
  }
  const Json report = report_to_json(reports, cfg);
  const std::string text = report.dump(2) + "\n";
  if (output) {
    std::ofstream file(*output, std::ios::binary);
    if (!file) throw InputError("cannot write " + *output);
    file << text;
  }
  if (json)
    out << text;
  else
    out << render_report(report);
  return report["passed"].get<bool>() ? kExitPass : kExitFailure;
}

const Json& require(const Json& j, const char* key, const std::string& op) {
  if (!j.is_object() || !j.contains(key))
    throw InputError("--op " + op + " needs '" + std::string(key) + "' in the input");
  return j.at(key);
}

Json evaluate(const std::string& op, const Json& doc) {
  const Json& inst = doc.is_object() && doc.contains("instance") ? doc.at("instance") : doc;
  auto ctx = std::make_shared<GeneratorContext>();

  if (op == "bracket" && inst.is_object() && inst.contains("t1")) {
    const WeilMatrix x1 = matrix_from_json(inst.at("t1"), *ctx);
    const WeilMatrix x2 = matrix_from_json(require(inst, "t2", op), *ctx);
    if (!x1.square() || !x2.square() || x1.rows() != x2.rows()) throw InputError("t1 and t2 must be square, same size");
    WeilVector base;
    if (inst.contains("base")) base = vector_from_json(inst.at("base"), *ctx);
    return matrix_to_json(bracket(*ctx, TangentVector{base, x1}, TangentVector{base, x2}).value);
  }

  const Microcube cube = microcube_from_json(require(inst, "microcube", op), ctx);
  const DifferentialForm omega = form_from_json(require(inst, "form", op), cube.base().size());
  const std::size_t k = omega.fiber_dim();
  const Representation rho = inst.contains("representation")
                                 ? representation_from_json(inst.at("representation"), omega.base_dim(), k)
                                 : Representation::trivial(k);

  if (op == "form") return matrix_to_json(omega.evaluate(cube));
  if (op == "dplus") return matrix_to_json(d_plus_value(omega, rho, cube));
  if (op == "dplus2") return matrix_to_json(d_plus_value(d_plus(omega, rho), rho, cube));
  if (op == "dtimes") return matrix_to_json(d_times_value(omega, rho, cube));
  if (op == "dcontour") return matrix_to_json(d_contour_value(omega, rho, cube));
  if (op == "mcdefect") return matrix_to_json(mc_defect(omega, rho, cube));
  if (op == "bracket") return matrix_to_json(mc_bracket_term(omega, cube));
  if (op == "classical") {
    if (cube.kind() != GroupoidKind::Pair || !cube.is_rational())
      throw InputError("--op classical needs a pair microcube with rational entries");
    const std::vector<Rational> x = to_rational(cube.block(0)).data();
    std::vector<RationalVector> vectors;
    for (std::size_t i = 1; i <= cube.arity(); ++i) vectors.push_back(to_rational(cube.block(slot_bit(i))).data());
    return matrix_to_json(to_weil(classical_exterior_derivative(omega, x, vectors)));
  }
  throw InputError("unknown op '" + op + "'");
}

int run_eval(const EvalOptions& opt, std::ostream& out) {
  const Json doc = load_document(opt.input);
  out << evaluate(opt.op, doc).dump() << "\n";
  return kExitPass;
}

int run_report(const std::string& input, std::ostream& out) {
  const Json doc = load_document(input);
  out << render_report(doc);
  return doc["passed"].get<bool>() ? kExitPass : kExitFailure;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for combinatorial differential forms on microcubes", "sdgforms"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run a named check (or all of them) and report");
  v->add_option("--suite", verify.suite, "all or a check name");
  v->add_option("--seed", verify.seed, "Master seed");
  v->add_option("--trials", verify.trials, "Trials per check");
  v->add_option("--base-dim", verify.base_dim, "Base dimension m");
  v->add_option("--fiber-dim", verify.fiber_dim, "Fiber dimension k");
  v->add_option("--rep", verify.rep, "trivial|adjoint|gauge|all");
  v->add_option("--groupoid", verify.groupoid, "pair|bundle|all");
  v->add_option("--degrees", verify.degrees, "Form degrees to exercise (0..2)")->delimiter(',');
  v->add_option("--bound", verify.bound, "Bound on random numerators");
  v->add_option("--output", verify.output, "Write the JSON report here");
  v->add_option("--config", verify.config, "TOML (or JSON) config; flags win");
  v->add_flag("--no-timing", verify.no_timing, "Report millis = 0 for byte-stable output");
  v->add_flag("--json", verify.json, "Print the JSON report instead of the table");

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "Evaluate an operator on an instance file");
  e->add_option("--op", eval.op, "Operator")->required()->check(CLI::IsMember(kOps));
  e->add_option("--input", eval.input, "Instance (.json or .toml) or failure witness")->required();

  std::string report_input;
  auto* r = app.add_subcommand("report", "Render a JSON report as a table");
  r->add_option("--input", report_input, "Report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (v->parsed()) return run_verify(verify, out);
    if (e->parsed()) return run_eval(eval, out);
    return run_report(report_input, out);
  } catch (const ResidueError& ex) {
    err << "residue error: " << ex.what() << "\n";
    return kExitResidue;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace sdg
