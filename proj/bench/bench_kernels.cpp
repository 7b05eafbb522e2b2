// OpenMP kernels against their serial references. The thread cap is the
// benchmark argument for the parallel variants.
#include <benchmark/benchmark.h>

#include "lcs/extension.hpp"
#include "lcs/moser.hpp"
#include "lcs/parallel.hpp"
#include "lcs/reference.hpp"
#include "lcs/sampling.hpp"

using namespace lcs;

namespace {

const ParametricEmbedding& ex1() {
  static const ParametricEmbedding e = example_torus_1();
  return e;
}

const std::vector<Point>& grid() {
  static const std::vector<Point> g = parameter_grid(ex1().source, 48);
  return g;
}

const RadialField& field() {
  static const RadialField F = [] {
    const ModelManifold T1 = ModelManifold::make(1, 0);
    RadialGridSpec spec;
    spec.base_per_axis = 64;
    spec.radii = 128;
    RadialField f(T1, spec, 1.0);
    for (int b = 0; b < f.base_count(); ++b)
      for (int d = 0; d < f.direction_count(); ++d)
        for (int r = 0; r < f.radius_count(); ++r) f.at(b, d, r) = 1.0 + 0.1 * std::sin(b + 0.05 * r);
    return f;
  }();
  return F;
}

const MoserProblem& problem() {
  static const MoserProblem P = [] {
    const ModelManifold T1 = ModelManifold::make(1, 0);
    const auto s = make_cotangent_structure(T1);
    return MoserProblem{s, constant_ball_factor(s.total, 2.0, 0.5, 3.0), 3.0};
  }();
  return P;
}

const std::vector<Point>& seeds() {
  static const std::vector<Point> s = [] {
    Vec lo(2), hi(2);
    lo << 0.0, -3.5;
    hi << 6.28, 3.5;
    return halton_box(lo, hi, 64);
  }();
  return s;
}

void BM_LagrangianParallel(benchmark::State& st) {
  set_thread_cap(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(verify_lagrangian(ex1(), grid()).residual_sup);
}
void BM_LagrangianReference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::lagrangian_residual(ex1(), grid()));
}

void BM_MollifyParallel(benchmark::State& st) {
  set_thread_cap(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mollify(field(), 2.0).values().data());
}
void BM_MollifyReference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::mollify(field(), 2.0).values().data());
}

void BM_FlowParallel(benchmark::State& st) {
  set_thread_cap(static_cast<int>(st.range(0)));
  FlowOptions o;
  o.richardson = false;
  for (auto _ : st) benchmark::DoNotOptimize(integrate_flow(problem(), seeds(), o).images.data());
}
void BM_FlowReference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::flow(problem(), seeds(), 1e-3).data());
}

}  // namespace

BENCHMARK(BM_LagrangianParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LagrangianReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MollifyParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MollifyReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowReference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
