#include <degen/asym_fit.hpp>
#include <degen/chern.hpp>
#include <degen/fiber_integrals.hpp>
#include <degen/milnor.hpp>
#include <degen/polynomial.hpp>
#include <degen/series.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

namespace
{

void BM_SeriesReciprocal(benchmark::State &state)
{
    const auto order = static_cast<std::size_t>(state.range(0));
    const auto f = degen::td_inverse_series(order);
    for (auto _ : state) {
        benchmark::DoNotOptimize(degen::series_reciprocal(f));
    }
}
BENCHMARK(BM_SeriesReciprocal)->Arg(16)->Arg(32)->Arg(64);

void BM_EGenusViaPushforward(benchmark::State &state)
{
    const auto t = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(degen::e_genus_via_pushforward(t));
    }
}
BENCHMARK(BM_EGenusViaPushforward)->Arg(4)->Arg(8);

void BM_MilnorNumber(benchmark::State &state)
{
    const char *germs[] = {"z0*z1", "z0^6 + z1^2", "z0^3 + z1^3 + z2^3", "z0^2 + z1^2 + z2^2 + z3^2"};
    const auto f = degen::PolynomialGerm::parse(germs[state.range(0)]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(degen::milnor_number(f));
    }
    state.SetLabel(germs[state.range(0)]);
}
BENCHMARK(BM_MilnorNumber)->DenseRange(0, 3);

void BM_MonomialPeeled(benchmark::State &state)
{
    const degen::MonomialExponents nu{std::vector<unsigned>(static_cast<std::size_t>(state.range(0)), 2)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(degen::monomial_f({0.01, 0.02}, nu));
    }
}
BENCHMARK(BM_MonomialPeeled)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_GaussNormNode(benchmark::State &state)
{
    const auto node = degen::PolynomialGerm::parse("z0*z1");
    for (auto _ : state) {
        benchmark::DoNotOptimize(degen::gauss_norm_integral(1e-4, node));
    }
}
BENCHMARK(BM_GaussNormNode)->Unit(benchmark::kMicrosecond);

void BM_FitB0(benchmark::State &state)
{
    std::vector<degen::IntegralSample> samples;
    for (const auto t : degen::SampleGrid::default_grid().points()) {
        const double r = std::abs(t);
        samples.push_back({t, 2.0 * std::log(r) + std::log1p(r * r), 0.0});
    }
    const auto avg = degen::s1_average(samples);
    for (auto _ : state) {
        benchmark::DoNotOptimize(degen::fit_b0(avg, degen::ExpansionModel{}));
    }
}
BENCHMARK(BM_FitB0)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
