#include <benchmark/benchmark.h>

#include "voapf/casimir.hpp"
#include "voapf/partition.hpp"

using namespace voapf;

namespace {

const PointConfig g1a = PointConfig::of({Rat(3), Rat(1)});

void bm_qseries_mul(benchmark::State& state) {
    int vars = int(state.range(0)), trunc = int(state.range(1));
    QSeries a(vars, trunc), b(vars, trunc);
    std::vector<uint32_t> e(size_t(vars), 0);
    auto fill = [&](QSeries& s, int salt) {
        auto rec = [&](auto&& self, size_t pos, int left) -> void {
            if (pos == e.size()) {
                s.set_coeff(e, rat(salt + int(e[0]) + 1, 3));
                return;
            }
            for (int n = 0; n <= left; ++n) {
                e[pos] = uint32_t(n);
                self(self, pos + 1, left - n);
            }
            e[pos] = 0;
        };
        rec(rec, 0, trunc);
    };
    fill(a, 1);
    fill(b, 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_qseries_mul)->Args({2, 8})->Args({3, 6});

void bm_wick_four_point(benchmark::State& state) {
    FlatModel M(VOAModel::heisenberg(2));
    std::vector<Insertion> ins;
    std::vector<Rat> xs{Rat(13), Rat(7), Rat(3), Rat(1)};
    auto weight = long(state.range(0));
    const auto& b = M.basis(weight);
    for (int i = 0; i < 4; ++i) ins.push_back({GradedVector(b[size_t(i) % b.size()]), xs[size_t(i)]});
    for (auto _ : state) benchmark::DoNotOptimize(wick_correlator(M, ins));
}
BENCHMARK(bm_wick_four_point)->Arg(2)->Arg(3)->Arg(4);

void bm_genus1_series(benchmark::State& state) {
    VOAModel m = VOAModel::heisenberg(1);
    int trunc = int(state.range(0));
    for (auto _ : state) {
        PartitionRequest req;
        req.model = m;
        req.genus = 1;
        req.trunc = trunc;
        req.points = g1a;
        benchmark::DoNotOptimize(partition_series(req));
    }
}
BENCHMARK(bm_genus1_series)->Arg(4)->Arg(6);

void bm_e8_roots(benchmark::State& state) {
    EvenLattice L = e8_lattice();
    EnumOptions opts;
    opts.store_vectors = false;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_by_norm(L, 2, opts));
}
BENCHMARK(bm_e8_roots);

void bm_mode_application(benchmark::State& state) {
    FlatModel M(VOAModel::heisenberg(1));
    const auto& b = M.basis(4);
    GradedVector v(b[1]);
    for (auto _ : state) {
        // fresh model so the memo table does not trivialize the loop
        FlatModel fresh(VOAModel::heisenberg(1));
        benchmark::DoNotOptimize(virasoro(fresh, -2, v));
    }
}
BENCHMARK(bm_mode_application);

} // namespace

BENCHMARK_MAIN();
