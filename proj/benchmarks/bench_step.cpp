// Microbenchmarks for the hot evolution kernels: one coined step, a streamed
// 200-step evolution, and the time-averaged distribution.

#include <array>
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "toruswalk/analysis.hpp"
#include "toruswalk/coins.hpp"
#include "toruswalk/operators.hpp"
#include "toruswalk/state.hpp"

using namespace toruswalk;

namespace {

CoinField make_field(const Geometry& g) {
    if (g.dim == 3) return build_reflection_field(g, BlockLibrary::standard());
    const CMat h = named_coin("hadamard_minus");
    return tensor_evolution_field(g.size, uniform_coin_row(g.size, h),
                                  uniform_coin_row(g.size, h));
}

WalkState make_state(const Geometry& g) {
    std::array<int, 3> ext{1, 1, 1};
    for (int a = 0; a < g.dim; ++a) ext[a] = a + 1;
    const int nch = 1 << g.dim;
    std::vector<cplx> inner(nch, cplx{1.0 / std::sqrt(double(nch)), 0.0});
    return basis_state(g, node_from_external(g, ext), inner);
}

void bench_step(benchmark::State& bs) {
    const Geometry g(static_cast<int>(bs.range(0)), static_cast<int>(bs.range(1)));
    const CoinField f = make_field(g);
    WalkState psi = make_state(g);
    for (auto _ : bs) {
        psi = step(psi, f);
        benchmark::DoNotOptimize(psi.amps.data());
    }
    bs.SetItemsProcessed(bs.iterations() * static_cast<int64_t>(psi.amps.size()));
}

void bench_evolve_200(benchmark::State& bs) {
    const Geometry g(static_cast<int>(bs.range(0)), static_cast<int>(bs.range(1)));
    const CoinField f = make_field(g);
    const WalkState psi0 = make_state(g);
    for (auto _ : bs) {
        double last = 0.0;
        evolve_visit(psi0, f, 200, [&](int t, const WalkState& s) {
            if (t == 200) last = std::norm(s.amps[0]);
        });
        benchmark::DoNotOptimize(last);
    }
}

void bench_average_distribution(benchmark::State& bs) {
    const Geometry g(static_cast<int>(bs.range(0)), static_cast<int>(bs.range(1)));
    const CoinField f = make_field(g);
    const WalkState psi0 = make_state(g);
    for (auto _ : bs) {
        AverageDistribution avg = average_distribution(psi0, f, 200);
        benchmark::DoNotOptimize(avg.p.data());
    }
}

BENCHMARK(bench_step)->Args({2, 11})->Args({2, 101})->Args({3, 5})->Args({3, 11});
BENCHMARK(bench_evolve_200)->Args({2, 11})->Args({3, 5});
BENCHMARK(bench_average_distribution)->Args({2, 11})->Args({3, 5});

}  // namespace

BENCHMARK_MAIN();
