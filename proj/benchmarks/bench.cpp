#include <benchmark/benchmark.h>

#include "pathhom/cayley.hpp"
#include "pathhom/magnitude.hpp"
#include "pathhom/path_homology.hpp"

using namespace pathhom;

namespace {

Digraph grid_torus(int n) {  // C_n box C_n
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
        arrows.emplace_back(i, (i + 1) % n);
    }
    Digraph cn = Digraph::make_indexed(std::move(names), std::move(arrows));
    return box_product(cn, cn);
}

Digraph power_ball(int radius) {
    FGAbelian z = parse_abelian_group("Z");
    return cayley_ball(z, parse_gen_list(z, "(1);(2);(4)"), radius);
}

void BM_distances(benchmark::State& state) {
    Digraph x = grid_torus(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        DistanceMatrix d(x);
        benchmark::DoNotOptimize(d(0, x.num_vertices() - 1));
    }
}
BENCHMARK(BM_distances)->Arg(8)->Arg(16);

void BM_smith(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    SparseIntMatrix m(n, n);
    std::uint64_t s = 42;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            if ((s >> 33) % 10 < 6) m.set(i, j, Int(static_cast<long long>((s >> 40) % 7) - 3));
        }
    for (auto _ : state) benchmark::DoNotOptimize(smith(m).factors.size());
}
BENCHMARK(BM_smith)->Arg(12)->Arg(24);

void BM_omega_basis(benchmark::State& state) {
    Digraph ball = power_ball(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(omega_basis(ball, 2, Ring::q()).columns.cols());
}
BENCHMARK(BM_omega_basis)->Arg(4)->Arg(8);

void BM_magnitude(benchmark::State& state) {
    Digraph x = grid_torus(3);
    std::vector<Ring> rings{Ring::q()};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            magnitude_homology(x, state.range(0), rings).degrees.size());
}
BENCHMARK(BM_magnitude)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
