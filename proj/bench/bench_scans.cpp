#include <benchmark/benchmark.h>

#include "mforge/constants.hpp"
#include "mforge/stability.hpp"

using namespace mforge;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

// Full-group verdict for a point of the P^1 (2,1) instance over GF(2).
void BM_StabilityFull(benchmark::State& state) {
  const FieldTag g = FieldTag::prime(2);
  ProjectiveData pd{1, {-2, -1}, {0}, {}};
  auto h = projective_space_hom_data<ModP>(g, pd);
  Multiplicities mult{{1, 2}, {3}};
  Polarization pol{{Rational(1, 4), Rational(3, 4)}, {Rational(1, 2)}};
  const auto dim = static_cast<unsigned>(rs_dim(h, mult));
  // first semistable point, so the whole unipotent orbit gets scanned
  MatP w = vector_from_index(g, dim, 1);
  for (uint64_t i = 1; !is_semistable_rs(h, mult, pol, w, GroupMode::full).semistable; ++i) w = vector_from_index(g, dim, i);
  for (auto _ : state) benchmark::DoNotOptimize(is_semistable_rs(h, mult, pol, w, GroupMode::full, {}, exec_of(state)));
}

// Exhaustive GF(3) search for the constant of the multiplication map on P^1.
void BM_ConstantsExhaustive(benchmark::State& state) {
  auto t = sigma1<ModP>(FieldTag::prime(3), 1);
  SearchOptions o;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(c_tau_search(t, 2, o));
}

// Sampled rational search for the derivative map on P^2.
void BM_ConstantsSampled(benchmark::State& state) {
  auto t = sigma0<Rational>(FieldTag::rationals(), 2);
  SearchOptions o;
  o.samples = 200;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(c_tau_search(t, 3, o));
}

}  // namespace

BENCHMARK(BM_StabilityFull)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConstantsExhaustive)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConstantsSampled)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
