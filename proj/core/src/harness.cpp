#include "sdg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>

#include "checks.hpp"
#include "sdg/errors.hpp"

namespace sdg {

void CheckConfig::validate() const {
  if (trials < 1) throw InputError("trials must be at least 1");
  if (base_dim < 1) throw InputError("base dimension must be at least 1");
  if (fiber_dim < 1) throw InputError("fiber dimension must be at least 1");
  if (base_dim > 6 || fiber_dim > 4) throw InputError("dimensions above m = 6, k = 4 are not supported");
  if (bound < 1) throw InputError("coefficient bound must be at least 1");
  for (auto d : degrees)
    if (d > 2) throw InputError("degrees above 2 are not exercised by the suites");
  if (gauge) {
    const auto field = MatrixPolynomial::parse(*gauge, base_dim);
    if (field.rows() != fiber_dim || field.cols() != fiber_dim)
      throw InputError("gauge field must be fiber_dim x fiber_dim");
  }
  if (representation && groupoid && !combinations(*this).size())
    throw InputError(std::string(to_string(*representation)) + " representation does not act on the " +
                     to_string(*groupoid) + " groupoid");
}

bool CheckConfig::wants_degree(std::size_t n) const {
  return std::find(degrees.begin(), degrees.end(), n) != degrees.end();
}

Json config_to_json(const CheckConfig& cfg) {
  Json j = {{"seed", cfg.seed},
            {"trials", cfg.trials},
            {"base_dim", cfg.base_dim},
            {"fiber_dim", cfg.fiber_dim},
            {"degrees", cfg.degrees},
            {"rep", cfg.representation ? to_string(*cfg.representation) : "all"},
            {"groupoid", cfg.groupoid ? to_string(*cfg.groupoid) : "all"},
            {"bound", cfg.bound},
            {"timing", cfg.timing}};
  if (cfg.gauge) j["gauge"] = *cfg.gauge;
  return j;
}

namespace {

std::size_t positive_integer(const Json& j, const char* key) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InputError(std::string("config key '") + key + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

CheckConfig config_from_json(const Json& j, CheckConfig cfg) {
  if (!j.is_object()) throw InputError("config must be a table");
  static const std::set<std::string> known = {"seed",  "trials", "base_dim", "fiber_dim", "degrees", "rep",  "groupoid",
                                              "bound", "timing", "suite",    "output",    "json",    "gauge"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw InputError("unknown config key '" + key + "'");
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_integer()) throw InputError("config key 'seed' must be an integer");
    cfg.seed = s.is_number_unsigned() ? s.get<std::uint64_t>() : static_cast<std::uint64_t>(s.get<std::int64_t>());
  }
  if (j.contains("trials")) cfg.trials = positive_integer(j.at("trials"), "trials");
  if (j.contains("base_dim")) cfg.base_dim = positive_integer(j.at("base_dim"), "base_dim");
  if (j.contains("fiber_dim")) cfg.fiber_dim = positive_integer(j.at("fiber_dim"), "fiber_dim");
  if (j.contains("bound")) cfg.bound = static_cast<long>(positive_integer(j.at("bound"), "bound"));
  if (j.contains("degrees")) {
    if (!j.at("degrees").is_array()) throw InputError("config key 'degrees' must be a list");
    cfg.degrees.clear();
    for (const auto& d : j.at("degrees")) cfg.degrees.push_back(positive_integer(d, "degrees"));
  }
  if (j.contains("rep")) {
    const auto s = j.at("rep").get<std::string>();
    if (s == "all")
      cfg.representation.reset();
    else
      cfg.representation = parse_representation_kind(s);
  }
  if (j.contains("groupoid")) {
    const auto s = j.at("groupoid").get<std::string>();
    if (s == "all")
      cfg.groupoid.reset();
    else
      cfg.groupoid = parse_groupoid_kind(s);
  }
  if (j.contains("gauge")) {
    const Json& g = j.at("gauge");
    std::vector<std::vector<std::string>> rows;
    if (!g.is_array() || g.empty()) throw InputError("config key 'gauge' must be a matrix of polynomial strings");
    for (const auto& row : g) {
      if (!row.is_array()) throw InputError("config key 'gauge' must be a matrix of polynomial strings");
      std::vector<std::string> r;
      for (const auto& e : row) r.push_back(e.is_string() ? e.get<std::string>() : e.dump());
      rows.push_back(std::move(r));
    }
    cfg.gauge = std::move(rows);
  }
  if (j.contains("timing")) {
    if (!j.at("timing").is_boolean()) throw InputError("config key 'timing' must be a boolean");
    cfg.timing = j.at("timing").get<bool>();
  }
  return cfg;
}

std::vector<std::pair<GroupoidKind, RepresentationKind>> combinations(const CheckConfig& cfg) {
  static const std::pair<GroupoidKind, RepresentationKind> all[] = {
      {GroupoidKind::Pair, RepresentationKind::Trivial},
      {GroupoidKind::Pair, RepresentationKind::Gauge},
      {GroupoidKind::Bundle, RepresentationKind::Trivial},
      {GroupoidKind::Bundle, RepresentationKind::Adjoint},
  };
  std::vector<std::pair<GroupoidKind, RepresentationKind>> out;
  for (const auto& c : all) {
    if (cfg.groupoid && *cfg.groupoid != c.first) continue;
    if (cfg.representation && *cfg.representation != c.second) continue;
    out.push_back(c);
  }
  return out;
}

std::vector<GroupoidKind> groupoids(const CheckConfig& cfg) {
  if (cfg.groupoid) return {*cfg.groupoid};
  return {GroupoidKind::Pair, GroupoidKind::Bundle};
}

Representation make_representation(RepresentationKind kind, std::size_t base_dim, std::size_t fiber_dim, Rng& rng,
                                   long bound) {
  switch (kind) {
    case RepresentationKind::Trivial:
      return Representation::trivial(fiber_dim);
    case RepresentationKind::Adjoint:
      return Representation::adjoint(fiber_dim);
    case RepresentationKind::Gauge:
      return Representation::gauge(random_gauge_field(rng, base_dim, fiber_dim, bound));
  }
  throw std::logic_error("unreachable");
}

Representation make_representation(const CheckConfig& cfg, RepresentationKind kind, std::size_t fiber_dim, Rng& rng) {
  if (kind == RepresentationKind::Gauge && cfg.gauge && cfg.gauge->size() == fiber_dim)
    return Representation::gauge(MatrixPolynomial::parse(*cfg.gauge, cfg.base_dim));
  return make_representation(kind, cfg.base_dim, fiber_dim, rng, cfg.bound);
}

namespace {

void subsets(std::size_t universe, std::size_t size, std::size_t start, std::vector<std::size_t>& current,
             std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == size) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = start; i < universe; ++i) {
    current.push_back(i);
    subsets(universe, size, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

DifferentialForm random_classical_form(Rng& rng, std::size_t degree, GroupoidKind groupoid, std::size_t base_dim,
                                       std::size_t fiber_dim, long bound, bool constant) {
  const std::size_t coords = groupoid == GroupoidKind::Pair ? base_dim : fiber_dim * fiber_dim;
  std::vector<std::vector<std::size_t>> indices;
  std::vector<std::size_t> current;
  subsets(coords, degree, 0, current, indices);
  std::vector<DifferentialForm::Term> terms;
  for (auto& index : indices) {
    MatrixPolynomial coefficient =
        constant ? MatrixPolynomial::constant(random_matrix(rng, fiber_dim, fiber_dim, bound), base_dim)
                 : random_matrix_polynomial(rng, fiber_dim, fiber_dim, base_dim, 2, bound);
    terms.push_back({std::move(index), std::move(coefficient)});
  }
  return DifferentialForm::classical(degree, fiber_dim, base_dim, std::move(terms));
}

// ------------------------------------------------------------------ running

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : detail::registry()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

bool is_check(std::string_view name) {
  const auto& names = check_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CheckReport run_check(std::string_view name, const CheckConfig& cfg) {
  cfg.validate();
  const auto& reg = detail::registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return name == e.name; });
  if (it == reg.end()) throw InputError("unknown check '" + std::string(name) + "'");

  CheckReport report;
  report.check = it->name;
  report.trials = cfg.trials;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    detail::Trial trial{cfg, t, Rng(Rng::derive(cfg.seed, it->name, t)), std::make_shared<GeneratorContext>(),
                        report.failures};
    try {
      it->fn(trial);
    } catch (const ResidueError& e) {
      trial.fail("no residue on valid input", Json(), Json(), Json(), {}, {}, std::string("ResidueError: ") + e.what());
    } catch (const std::exception& e) {
      trial.fail("no exception", Json(), Json(), Json(), {}, {}, e.what());
    }
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report.millis = cfg.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() : 0;
  return report;
}

std::vector<CheckReport> run_suite(const CheckConfig& cfg) {
  std::vector<CheckReport> out;
  for (const auto& name : check_names()) out.push_back(run_check(name, cfg));
  return out;
}

Json report_to_json(const std::vector<CheckReport>& reports, const CheckConfig& cfg) {
  Json list = Json::array();
  bool passed = true;
  for (const auto& r : reports) {
    passed = passed && r.passed();
    list.push_back({{"check", r.check}, {"trials", r.trials}, {"failures", r.failures}, {"millis", r.millis}});
  }
  return {{"version", kVersion}, {"config", config_to_json(cfg)}, {"reports", std::move(list)}, {"passed", passed}};
}

std::vector<std::string> validate_report_schema(const Json& report) {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
    return ok;
  };
  if (!require(report.is_object(), "report must be an object")) return problems;
  require(report.contains("version") && report["version"].is_string(), "version must be a string");
  require(report.contains("config") && report["config"].is_object(), "config must be an object");
  require(report.contains("passed") && report["passed"].is_boolean(), "passed must be a boolean");
  if (!require(report.contains("reports") && report["reports"].is_array(), "reports must be a list")) return problems;

  bool all_passed = true;
  for (std::size_t i = 0; i < report["reports"].size(); ++i) {
    const Json& r = report["reports"][i];
    const std::string at = "reports[" + std::to_string(i) + "]";
    if (!require(r.is_object(), at + " must be an object")) continue;
    for (const auto& [key, value] : r.items())
      require(key == "check" || key == "trials" || key == "failures" || key == "millis",
              at + " has unexpected key '" + key + "'");
    require(r.contains("check") && r["check"].is_string() && is_check(r["check"].get<std::string>()),
            at + ".check must name a known check");
    require(r.contains("trials") && r["trials"].is_number_unsigned() && r["trials"].get<std::size_t>() >= 1,
            at + ".trials must be a positive integer");
    require(r.contains("millis") && r["millis"].is_number_integer() && r["millis"].get<std::int64_t>() >= 0,
            at + ".millis must be a non-negative integer");
    if (require(r.contains("failures") && r["failures"].is_array(), at + ".failures must be a list")) {
      for (const auto& f : r["failures"])
        require(f.is_object() && f.contains("property") && f["property"].is_string() && f.contains("trial"),
                at + ".failures entries need 'property' and 'trial'");
      all_passed = all_passed && r["failures"].empty();
    }
  }
  if (report.contains("passed") && report["passed"].is_boolean())
    require(report["passed"].get<bool>() == all_passed, "passed must agree with the failure lists");
  return problems;
}

std::string render_report(const Json& report) {
  const auto problems = validate_report_schema(report);
  if (!problems.empty()) throw InputError("not a report: " + problems.front());
  std::ostringstream os;
  os << std::left << std::setw(18) << "check" << std::right << std::setw(8) << "trials" << std::setw(10) << "failures"
     << std::setw(10) << "millis" << "  status\n";
  for (const auto& r : report["reports"]) {
    const bool ok = r["failures"].empty();
    os << std::left << std::setw(18) << r["check"].get<std::string>() << std::right << std::setw(8)
       << r["trials"].get<std::size_t>() << std::setw(10) << r["failures"].size() << std::setw(10)
       << r["millis"].get<std::int64_t>() << "  " << (ok ? "pass" : "FAIL") << "\n";
    for (const auto& f : r["failures"]) {
      os << "    trial " << f["trial"].dump() << ": " << f["property"].get<std::string>();
      if (f.contains("detail") && f["detail"].is_string() && !f["detail"].get<std::string>().empty())
        os << " (" << f["detail"].get<std::string>() << ")";
      os << "\n";
    }
  }
  os << (report["passed"].get<bool>() ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

}  // namespace sdg
