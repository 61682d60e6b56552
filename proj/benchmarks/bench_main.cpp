#include <benchmark/benchmark.h>

#include "skacz/instances.hpp"
#include "skacz/oracle.hpp"
#include "skacz/projections.hpp"
#include "skacz/solvers.hpp"

using namespace skacz;

namespace {

Instance gaussian(std::size_t m, std::size_t n, std::size_t s)
{
    InstanceSpec spec;
    spec.m = m;
    spec.n = n;
    spec.s = s;
    spec.seed = 1;
    return make_instance(spec);
}

void run_method(benchmark::State& state, Method method)
{
    const auto inst = gaussian(1000, static_cast<std::size_t>(state.range(0)), 25);
    SolverConfig cfg;
    cfg.method = method;
    cfg.max_iters = 1000;
    cfg.log_every = 1000;
    for (auto _ : state) {
        auto r = run(inst.a, inst.b, cfg);
        benchmark::DoNotOptimize(r.state.x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.max_iters));
}

void BM_RK(benchmark::State& s) { run_method(s, Method::RK); }
void BM_RSK(benchmark::State& s) { run_method(s, Method::RSK); }
void BM_ERSK(benchmark::State& s) { run_method(s, Method::ERSK); }

void BM_ElasticNetLinesearch(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    Vector xstar(n), a(n);
    for (std::size_t i = 0; i < n; ++i) {
        xstar[i] = 2.0 * rng.normal();
        a[i] = rng.normal();
    }
    const auto f = Potential::elastic_net(1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(hyperplane_linesearch(f, xstar, a, 1.0));
}

void BM_Oracle(benchmark::State& state)
{
    const auto inst = gaussian(250, 50, 6);
    const auto f = Potential::elastic_net(1.0);
    for (auto _ : state) {
        auto r = solve_dual(inst.a, inst.b, f, 1e-10);
        benchmark::DoNotOptimize(r.x_hat.data());
    }
}

} // namespace

BENCHMARK(BM_RK)->Arg(200);
BENCHMARK(BM_RSK)->Arg(200);
BENCHMARK(BM_ERSK)->Arg(200);
BENCHMARK(BM_ElasticNetLinesearch)->Arg(50)->Arg(200)->Arg(1000);
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
