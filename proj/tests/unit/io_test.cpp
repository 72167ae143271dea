#include "sdg/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "sdg/errors.hpp"
#include "sdg/harness.hpp"
#include "support.hpp"

namespace sdg {
namespace {

using test::wmat;
using test::wvec;

std::filesystem::path examples() {
  const char* dir = std::getenv("SDG_EXAMPLES");
  return dir ? std::filesystem::path(dir) : std::filesystem::path("examples_data");
}

TEST(Io, WeilEntryRoundTrip) {
  GeneratorContext ctx;
  const WeilElement d1 = WeilElement::generator(ctx.allocate());
  const WeilElement d2 = WeilElement::generator(ctx.allocate());
  const WeilElement a = Rational(3, 2) + 2 * d1 - d1 * d2;
  GeneratorContext fresh_ctx;
  EXPECT_EQ(entry_from_json(entry_to_json(a), ctx), a);
  EXPECT_EQ(weil_to_json(entry_from_json(entry_to_json(a), fresh_ctx)), weil_to_json(a));
  EXPECT_EQ(entry_from_json(weil_to_json(WeilElement(Rational(-1, 3))), fresh_ctx), WeilElement(Rational(-1, 3)));
  EXPECT_EQ(entry_to_json(WeilElement(Rational(5, 4))), Json("5/4"));
  EXPECT_EQ(entry_from_json(Json(7), fresh_ctx), WeilElement(7));
  // Reading registers generators, so the next allocation is fresh.
  EXPECT_GT(fresh_ctx.allocate().index, d2.terms().back().first.indices().back());
}

TEST(Io, RejectsFloatsAndGarbage) {
  GeneratorContext ctx;
  EXPECT_THROW(entry_from_json(Json(0.5), ctx), InputError);
  EXPECT_THROW(entry_from_json(Json("1/0"), ctx), InputError);
  EXPECT_THROW(entry_from_json(Json("abc"), ctx), InputError);
  EXPECT_THROW(parse_toml("x = 0.5\n"), InputError);
  EXPECT_THROW(parse_toml("x = [\n"), InputError);
}

TEST(Io, MicrocubeRoundTrip) {
  Rng rng(61);
  auto ctx = std::make_shared<GeneratorContext>();
  for (const auto g : {GroupoidKind::Pair, GroupoidKind::Bundle})
    for (std::size_t n = 0; n <= 3; ++n) {
      const Microcube c = random_microcube(rng, ctx, g, n, 2, 2, 3);
      auto other = std::make_shared<GeneratorContext>();
      EXPECT_EQ(microcube_from_json(microcube_to_json(c), other), c);
      EXPECT_EQ(microcube_from_json(Json::parse(microcube_to_json(c).dump()), other), c);
    }
}

TEST(Io, MicrocubeDefaultsOrigin) {
  auto ctx = std::make_shared<GeneratorContext>();
  const Json pair = {{"groupoid", "pair"}, {"arity", 1}, {"base", {"1", "2"}}, {"table", Json::array()}};
  const Microcube p = microcube_from_json(pair, ctx);
  EXPECT_EQ(p.block(0), test::column(wvec({"1", "2"})));
  EXPECT_TRUE(p.block(slot_bit(1)).is_zero());
  const Json bundle = {
      {"groupoid", "bundle"}, {"arity", 1}, {"base", {"0"}}, {"fiber_dim", 2}, {"table", Json::array()}};
  EXPECT_EQ(microcube_from_json(bundle, ctx).block(0), WeilMatrix::identity(2));
}

TEST(Io, MicrocubeMissingKeys) {
  auto ctx = std::make_shared<GeneratorContext>();
  EXPECT_THROW(microcube_from_json({{"groupoid", "pair"}, {"base", {"0"}}}, ctx), InputError);
  EXPECT_THROW(microcube_from_json({{"groupoid", "loop"}, {"arity", 1}, {"base", {"0"}}}, ctx), InputError);
  const Json bad_slot = {
      {"groupoid", "pair"}, {"arity", 1}, {"base", {"0"}}, {"table", {{{"monomial", {2}}, {"block", {"1"}}}}}};
  EXPECT_THROW(microcube_from_json(bad_slot, ctx), InputError);
}

TEST(Io, FormRoundTrip) {
  Rng rng(62);
  for (std::size_t n = 0; n <= 2; ++n) {
    const DifferentialForm omega = random_classical_form(rng, n, GroupoidKind::Pair, 3, 2, 3);
    const DifferentialForm back = form_from_json(form_to_json(omega));
    EXPECT_EQ(back.degree(), omega.degree());
    EXPECT_EQ(back.base_dim(), 3u);
    EXPECT_EQ(back.terms(), omega.terms());
  }
  const Json no_base = {{"degree", 0}, {"fiber_dim", 1}, {"terms", {{{"index", Json::array()}, {"matrix", {{"x2"}}}}}}};
  EXPECT_EQ(form_from_json(no_base, 2).base_dim(), 2u);
  EXPECT_THROW(form_from_json(no_base), InputError);
}

TEST(Io, PlantedFormRoundTrip) {
  const Json j = form_to_json(planted_invalid_form(2));
  EXPECT_EQ(j.at("kind"), "planted_invalid");
  const DifferentialForm back = form_from_json(j);
  EXPECT_FALSE(back.is_classical());
  EXPECT_EQ(back.fiber_dim(), 2u);
  EXPECT_THROW(form_from_json({{"kind", "mystery"}, {"degree", 1}, {"fiber_dim", 1}}), InputError);
  EXPECT_THROW(
      form_to_json(DifferentialForm::custom(1, 1, "opaque", [](const Microcube&) { return WeilMatrix(1, 1); })),
      std::exception);
}

TEST(Io, RepresentationRoundTrip) {
  const auto field = MatrixPolynomial::parse({{"1 + x1^2", "x2"}, {"0", "1"}}, 2);
  const Representation back = representation_from_json(representation_to_json(Representation::gauge(field)), 2, 2);
  EXPECT_EQ(back.kind(), RepresentationKind::Gauge);
  EXPECT_EQ(back.gauge_field(), field);
  EXPECT_EQ(representation_from_json({{"kind", "adjoint"}}, 1, 3).kind(), RepresentationKind::Adjoint);
  EXPECT_THROW(representation_from_json({{"kind", "gauge"}}, 2, 2), InputError);
  EXPECT_THROW(representation_from_json({{"kind", "spin"}}, 2, 2), InputError);
}

TEST(Io, TomlMatchesJsonModel) {
  const Json j = parse_toml("seed = 7\ndegrees = [0, 1]\n[gauge_block]\nm = [[\"1\", \"x1\"]]\n");
  EXPECT_EQ(j.at("seed"), 7);
  EXPECT_EQ(j.at("degrees"), Json::array({0, 1}));
  EXPECT_EQ(j.at("gauge_block").at("m")[0][1], "x1");
}

TEST(Io, LoadsExampleDocuments) {
  const Json square = load_document(examples() / "unit_square.json");
  auto ctx = std::make_shared<GeneratorContext>();
  const Microcube c = microcube_from_json(square.at("microcube"), ctx);
  EXPECT_EQ(c.arity(), 2u);
  EXPECT_EQ(form_from_json(square.at("form")).degree(), 1u);
  const Json toml = load_document(examples() / "verify.toml");
  EXPECT_EQ(config_from_json(toml).seed, 42u);
  EXPECT_THROW(load_document(examples() / "does_not_exist.json"), InputError);
}

}  // namespace
}  // namespace sdg
