// Microbenchmarks for the hot paths: expression evaluation, chart jets,
// curvature reports, geodesic tracing, and parallel transport.
#include <benchmark/benchmark.h>

#include <cmath>

#include "difgeo/curves.hpp"
#include "difgeo/exprparse.hpp"
#include "difgeo/geodesy.hpp"
#include "difgeo/surfaces.hpp"
#include "difgeo/transport.hpp"

using namespace difgeo;

static void BM_parse(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(parse("(2+cos(v))*cos(u) + sin(u*v)/(1+u^2)", {"u", "v"}));
}
BENCHMARK(BM_parse);

static void BM_eval_jet3(benchmark::State& state) {
    Ast ast = parse("cos(t)*exp(0.1*t) + t^3/(1+t^2)", {"t"});
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_jet3(ast, "t", t));
        t += 1e-6;
    }
}
BENCHMARK(BM_eval_jet3);

static void BM_chart_jet(benchmark::State& state) {
    SurfaceSpec S = SurfaceSpec::builtin("torus");
    double u = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(S.chart(u, 0.4));
        u += 1e-6;
    }
}
BENCHMARK(BM_chart_jet);

static void BM_curvature_report(benchmark::State& state) {
    SurfaceSpec S = SurfaceSpec::builtin("torus");
    double u = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(curvature_report(S, u, 0.4));
        u += 1e-6;
    }
}
BENCHMARK(BM_curvature_report);

static void BM_kappa_tau(benchmark::State& state) {
    CurveSpec c = CurveSpec::analytic("cos(t)", "sin(t)", "0.5*t", 0.0, 4.0 * M_PI);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kappa(c, t));
        benchmark::DoNotOptimize(tau(c, t));
        t += 1e-6;
    }
}
BENCHMARK(BM_kappa_tau);

static void BM_trace_geodesic(benchmark::State& state) {
    SurfaceSpec S = SurfaceSpec::builtin("torus");
    int steps = (int)state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(trace_geodesic(S, {0.3, 0.4}, {0.8, 0.6}, 1.0, steps));
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_trace_geodesic)->Arg(256)->Arg(2048);

static void BM_parallel_transport(benchmark::State& state) {
    SurfaceSpec S = SurfaceSpec::builtin("sphere");
    CurvePiece piece =
        CurvePiece::from_param(ParamCurve::make("t", "0.5", -M_PI, M_PI));
    OnSurfaceCurve loop = OnSurfaceCurve::make(S, {piece}, true);
    int steps = (int)state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(parallel_transport(loop, {1.0, 0.0}, steps));
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_parallel_transport)->Arg(256)->Arg(2048);

BENCHMARK_MAIN();
