#include <benchmark/benchmark.h>

#include "sdg/harness.hpp"
#include "sdg/operators.hpp"

namespace sdg {
namespace {

WeilElement random_element(Rng& rng, GeneratorContext& ctx, std::size_t gens) {
  WeilElement a(rng.rational(5));
  std::vector<WeilElement> d;
  for (std::size_t i = 0; i < gens; ++i) d.push_back(WeilElement::generator(ctx.allocate()));
  for (std::size_t i = 0; i < gens; ++i) {
    a += rng.rational(5) * d[i];
    if (i + 1 < gens) a += rng.rational(5) * d[i] * d[i + 1];
  }
  return a;
}

void BM_WeilMultiply(benchmark::State& state) {
  Rng rng(1);
  GeneratorContext ctx;
  const auto gens = static_cast<std::size_t>(state.range(0));
  const WeilElement a = random_element(rng, ctx, gens);
  const WeilElement b = random_element(rng, ctx, gens);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_WeilMultiply)->Arg(2)->Arg(4)->Arg(8);

void BM_MatrixInverse(benchmark::State& state) {
  Rng rng(2);
  auto ctx = std::make_shared<GeneratorContext>();
  const auto k = static_cast<std::size_t>(state.range(0));
  const Microcube c = random_microcube(rng, ctx, GroupoidKind::Bundle, 2, 2, k, 3);
  const WeilMatrix m =
      c.evaluate(WeilVector{WeilElement::generator(ctx->allocate()), WeilElement::generator(ctx->allocate())}).element;
  for (auto _ : state) benchmark::DoNotOptimize(matrix_inverse(m));
}
BENCHMARK(BM_MatrixInverse)->Arg(2)->Arg(3)->Arg(4);

void BM_DPlus(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const DifferentialForm omega = random_classical_form(rng, n, GroupoidKind::Bundle, 2, 2, 3);
  const Representation rho = Representation::adjoint(2);
  auto draw = [&] {
    return random_microcube(rng, std::make_shared<GeneratorContext>(), GroupoidKind::Bundle, n + 1, 2, 2, 3);
  };
  Microcube c = draw();
  for (auto _ : state) {
    if (c.context()->allocated() > kMaxGenerators - 64) {
      state.PauseTiming();
      c = draw();
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(d_plus_value(omega, rho, c));
  }
}
BENCHMARK(BM_DPlus)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_DPlusSquared(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const DifferentialForm omega = random_classical_form(rng, n, GroupoidKind::Pair, 2, 2, 3);
  const Representation rho = Representation::gauge(random_gauge_field(rng, 2, 2, 3));
  const DifferentialForm twice = d_plus(omega, rho);
  for (auto _ : state) {
    state.PauseTiming();
    const Microcube c = random_microcube(rng, std::make_shared<GeneratorContext>(), GroupoidKind::Pair, n + 2, 2, 0, 3);
    state.ResumeTiming();
    benchmark::DoNotOptimize(d_plus_value(twice, rho, c));
  }
}
BENCHMARK(BM_DPlusSquared)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sdg

BENCHMARK_MAIN();
