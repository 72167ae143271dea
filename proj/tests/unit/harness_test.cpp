#include "sdg/harness.hpp"

#include <gtest/gtest.h>

#include "sdg/errors.hpp"

namespace sdg {
namespace {

CheckConfig quick(std::size_t trials) {
  CheckConfig cfg;
  cfg.trials = trials;
  cfg.timing = false;
  return cfg;
}

Json run(const std::vector<std::string>& names, const CheckConfig& cfg) {
  std::vector<CheckReport> reports;
  for (const auto& n : names) reports.push_back(run_check(n, cfg));
  return report_to_json(reports, cfg);
}

TEST(Harness, RegistryNames) {
  EXPECT_TRUE(is_check("bracket_oracle"));
  EXPECT_TRUE(is_check("classical_cross"));
  EXPECT_FALSE(is_check("nosuch"));
  EXPECT_EQ(check_names().size(), 18u);
  EXPECT_THROW(run_check("nosuch", quick(1)), InputError);
}

TEST(Harness, BracketOracleAtFiberTwo) {
  CheckConfig cfg = quick(100);
  const CheckReport r = run_check("bracket_oracle", cfg);
  EXPECT_EQ(r.trials, 100u);
  EXPECT_TRUE(r.passed()) << r.failures.front().dump();
}

TEST(Harness, ResidueNegativeControl) {
  const CheckReport r = run_check("residue_negative", quick(5));
  EXPECT_TRUE(r.passed()) << r.failures.front().dump();
}

TEST(Harness, SingleTrialChecks) {
  for (const auto* name : {"simplicial", "lemma41", "star_compat", "tangent_add", "coincidence", "mc_formula"}) {
    const CheckReport r = run_check(name, quick(1));
    EXPECT_TRUE(r.passed()) << name << ": " << r.failures.front().dump();
  }
}

TEST(Harness, ReportsAreByteStableWithoutTiming) {
  const std::vector<std::string> names = {"bracket_oracle", "jacobi", "lemma42", "dplus_sq_zero"};
  const CheckConfig cfg = quick(3);
  const std::string a = run(names, cfg).dump(2);
  const std::string b = run(names, cfg).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(validate_report_schema(Json::parse(a)).empty());
}

TEST(Harness, OtherSeedsPassToo) {
  const std::vector<std::string> names = {"bracket_oracle", "tangent_inverse", "order_indep", "closed_corollary"};
  for (std::uint64_t seed : {1u, 7u, 1234u}) {
    CheckConfig cfg = quick(3);
    cfg.seed = seed;
    EXPECT_TRUE(run(names, cfg).at("passed").get<bool>()) << "seed " << seed;
  }
}

TEST(Harness, ConfigValidation) {
  CheckConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.fiber_dim = 5;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.degrees = {3};
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.representation = RepresentationKind::Adjoint;
  cfg.groupoid = GroupoidKind::Pair;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.gauge = std::vector<std::vector<std::string>>{{"1"}};
  EXPECT_THROW(cfg.validate(), InputError);
  EXPECT_NO_THROW(CheckConfig{}.validate());
}

TEST(Harness, ConfigJsonOverlay) {
  const Json gauge = Json::array({Json::array({"1", "x2"}), Json::array({"0", "1"})});
  const Json j = {{"seed", 9}, {"rep", "gauge"}, {"gauge", gauge}, {"degrees", {1}}};
  const CheckConfig cfg = config_from_json(j);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.representation, RepresentationKind::Gauge);
  ASSERT_TRUE(cfg.gauge.has_value());
  EXPECT_EQ((*cfg.gauge)[0][1], "x2");
  EXPECT_EQ(cfg.degrees, std::vector<std::size_t>{1});
  EXPECT_EQ(cfg.trials, CheckConfig{}.trials);
  EXPECT_EQ(config_from_json(config_to_json(cfg)).gauge, cfg.gauge);
  EXPECT_THROW(config_from_json({{"sed", 1}}), InputError);
  EXPECT_THROW(config_from_json({{"rep", "spin"}}), InputError);
}

TEST(Harness, FixedGaugeField) {
  CheckConfig cfg;
  cfg.gauge = std::vector<std::vector<std::string>>{{"1 + x1^2", "x2"}, {"0", "1"}};
  Rng rng(1);
  const Representation rho = make_representation(cfg, RepresentationKind::Gauge, 2, rng);
  EXPECT_EQ(rho.gauge_field(), MatrixPolynomial::parse(*cfg.gauge, 2));
  // A different fiber size falls back to a random field.
  EXPECT_EQ(make_representation(cfg, RepresentationKind::Gauge, 3, rng).fiber_dim(), 3u);
}

TEST(Harness, Combinations) {
  CheckConfig cfg;
  EXPECT_EQ(combinations(cfg).size(), 4u);
  cfg.groupoid = GroupoidKind::Pair;
  EXPECT_EQ(combinations(cfg).size(), 2u);
  cfg.representation = RepresentationKind::Trivial;
  EXPECT_EQ(combinations(cfg).size(), 1u);
}

TEST(Harness, SchemaValidator) {
  const CheckConfig cfg = quick(1);
  Json good = run({"bracket_oracle"}, cfg);
  EXPECT_TRUE(validate_report_schema(good).empty());

  Json bad = good;
  bad["passed"] = false;
  EXPECT_FALSE(validate_report_schema(bad).empty());
  bad = good;
  bad["reports"][0]["check"] = "nosuch";
  EXPECT_FALSE(validate_report_schema(bad).empty());
  bad = good;
  bad["reports"][0]["failures"] = Json::array({Json{{"trial", 0}, {"property", "x"}}});
  EXPECT_FALSE(validate_report_schema(bad).empty());
  bad["passed"] = false;
  EXPECT_TRUE(validate_report_schema(bad).empty());
  bad["reports"][0]["extra"] = 1;
  EXPECT_FALSE(validate_report_schema(bad).empty());
  EXPECT_FALSE(validate_report_schema(Json::array()).empty());
}

TEST(Harness, RenderReport) {
  Json report = run({"bracket_oracle"}, quick(2));
  const std::string text = render_report(report);
  EXPECT_NE(text.find("bracket_oracle"), std::string::npos);
  EXPECT_NE(text.find("pass"), std::string::npos);
  report["reports"][0]["failures"] = Json::array({Json{{"trial", 1}, {"property", "bracket"}}});
  report["passed"] = false;
  const std::string failing = render_report(report);
  EXPECT_NE(failing.find("FAIL"), std::string::npos);
  EXPECT_NE(failing.find("trial 1: bracket"), std::string::npos);
  EXPECT_THROW(render_report(Json::object()), InputError);
}

}  // namespace
}  // namespace sdg
