// Acceptance suite: one line per criterion, every check an exact equality
// of rationals. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "voapf/casimir.hpp"
#include "voapf/eta.hpp"
#include "voapf/partition.hpp"
#include "voapf/schottky.hpp"

using namespace voapf;

namespace {

int failures = 0;

struct Criterion {
    const char* label;
    std::chrono::steady_clock::time_point start;
    bool ok = true;

    explicit Criterion(const char* l) : label(l), start(std::chrono::steady_clock::now()) {}
    void check(bool cond) { ok = ok && cond; }
    ~Criterion() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::printf("%s %s (%lld ms)\n", ok ? "PASS" : "FAIL", label,
                    static_cast<long long>(ms));
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

const PointConfig g1a = PointConfig::of({Rat(3), Rat(1)});
const PointConfig g1b = PointConfig::of({Rat(7), Rat(2)});
const PointConfig g2a = PointConfig::of({Rat(13), Rat(7), Rat(3), Rat(1)});
const PointConfig g2b = PointConfig::of({Rat(23), Rat(11), Rat(5), Rat(2)});

QSeries plain_series(const VOAModel& m, int genus, int trunc, const PointConfig& pts,
                     int threads = 1, long long budget = 100000000) {
    PartitionRequest req;
    req.model = m;
    req.genus = genus;
    req.trunc = trunc;
    req.points = pts;
    req.threads = threads;
    req.budget = budget;
    return partition_series(req);
}

GradedVector state_of(const FockState& s) { return GradedVector{VoaState{s, {}}}; }

void criterion1() {
    Criterion c("criterion-01 genus-1 master identity, two pipelines, two point sets");
    struct Case {
        VOAModel model;
        int trunc;
    };
    std::vector<Case> cases{{VOAModel::heisenberg(1), 6},
                            {VOAModel::heisenberg(2), 4},
                            {VOAModel::lattice_model(a1_lattice()), 3},
                            {VOAModel::lattice_model(e8_lattice()), 2}};
    for (const Case& cs : cases)
        for (const PointConfig& pts : {g1a, g1b}) {
            QSeries lhs = plain_series(cs.model, 1, cs.trunc, pts);
            QSeries rhs = genus1_oracle(cs.model, cs.trunc, pts.w(0), pts.z(0));
            c.check(lhs == rhs);
        }
}

void criterion2() {
    Criterion c("criterion-02 theta pullback factorization at genus one");
    for (const EvenLattice& L : {e8_lattice(), a1_lattice()}) {
        int N = 3;
        VOAModel m = VOAModel::lattice_model(L);
        QSeries lhs = normalized_partition(m, 1, N, g1a);
        USeries pullback = useries_compose(theta_genus1(L, N), lagrange_invert_mu(N));
        Rat scale = Rat(1) / ((g1a.w(0) - g1a.z(0)) * (g1a.w(0) - g1a.z(0)));
        QSeries rhs = pullback.scale_variable(scale).to_qseries();
        c.check(lhs == rhs);
    }
}

void criterion3() {
    Criterion c("criterion-03 free-boson normalization is exactly one");
    for (int r : {1, 2}) {
        VOAModel m = VOAModel::heisenberg(r);
        c.check(normalized_partition(m, 1, 3, g1a) == QSeries::one(1, 3));
        c.check(normalized_partition(m, 2, 3, g2a) == QSeries::one(2, 3));
    }
}

void criterion4() {
    Criterion c("criterion-04 multiplicativity through the tensor basis");
    VOAModel h1 = VOAModel::heisenberg(1);
    VOAModel a1 = VOAModel::lattice_model(a1_lattice());
    c.check(tensor_partition_check(h1, h1, 1, 3, g1a));
    c.check(tensor_partition_check(h1, h1, 2, 3, g2a));
    c.check(tensor_partition_check(h1, a1, 1, 2, g1a));
}

void criterion5() {
    Criterion c("criterion-05 correlator symmetry and mode-sum equivalence");
    // permutation symmetry: 20 free-boson and 10 charged four-point cases
    {
        FlatModel M(VOAModel::heisenberg(2));
        std::mt19937 rng(101);
        std::vector<GradedVector> pool;
        for (int k = 1; k <= 3; ++k)
            for (const FockState& s : basis(2, k)) pool.push_back(state_of(s));
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        std::vector<Rat> xs{Rat(13), Rat(7), Rat(3), Rat(1)};
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<Insertion> base;
            for (int i = 0; i < 4; ++i) base.push_back({pool[pick(rng)], xs[size_t(i)]});
            Rat v0 = wick_correlator(M, base);
            std::vector<size_t> perm{0, 1, 2, 3};
            do {
                std::vector<Insertion> ins;
                for (size_t i : perm) ins.push_back(base[i]);
                c.check(wick_correlator(M, ins) == v0);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    {
        FlatModel M(VOAModel::lattice_model(a1_lattice()));
        std::mt19937 rng(51);
        auto charged = [](std::vector<std::pair<int, int>> modes, long q) {
            FockState f;
            for (auto [cl, n] : modes) f.modes.push_back(FockMode{int32_t(cl), int32_t(n)});
            f.normalize();
            return GradedVector{VoaState{f, Charge{q}}};
        };
        std::vector<GradedVector> pool{charged({}, 1),        charged({}, -1),
                                       charged({{0, 1}}, 1),  charged({{0, 1}}, -1),
                                       charged({{0, 2}}, 1),  charged({{0, 2}}, -1),
                                       charged({{0, 1}}, 0),  charged({{0, 2}}, 0)};
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        std::vector<Rat> xs{Rat(13), Rat(7), Rat(3), Rat(1)};
        int done = 0;
        while (done < 10) {
            std::vector<GradedVector> states;
            long total = 0;
            for (int i = 0; i < 4; ++i) {
                states.push_back(pool[pick(rng)]);
                total += states.back().terms().begin()->first.charge[0];
            }
            if (total != 0) continue;
            ++done;
            std::vector<Insertion> base;
            for (int i = 0; i < 4; ++i) base.push_back({states[size_t(i)], xs[size_t(i)]});
            Rat v0 = wick_correlator(M, base);
            std::vector<size_t> perm{0, 1, 2, 3};
            do {
                std::vector<Insertion> ins;
                for (size_t i : perm) ins.push_back(base[i]);
                c.check(wick_correlator(M, ins) == v0);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    // wick = certified mode summation on two- and three-point functions
    {
        for (int rank : {1, 2}) {
            FlatModel M(VOAModel::heisenberg(rank));
            std::vector<GradedVector> pool;
            for (int k = 1; k <= 4; ++k)
                for (const FockState& s : basis(rank, k)) pool.push_back(state_of(s));
            for (const auto& pts : {std::pair<Rat, Rat>{7, 2}, {9, 4}, {5, 1}}) {
                for (const GradedVector& a : pool)
                    for (const GradedVector& b : pool) {
                        std::vector<Insertion> ins{{a, pts.first}, {b, pts.second}};
                        ModeOracleResult o = mode_oracle(M, ins, 24);
                        c.check(o.certified);
                        c.check(o.value == wick_correlator(M, ins));
                    }
            }
        }
        FlatModel M(VOAModel::heisenberg(1));
        std::vector<GradedVector> pool;
        for (int k = 1; k <= 4; ++k)
            for (const FockState& s : basis(1, k)) pool.push_back(state_of(s));
        std::vector<Rat> xs{Rat(7), Rat(3), Rat(1)};
        for (const GradedVector& a : pool)
            for (const GradedVector& b : pool)
                for (const GradedVector& cc : pool) {
                    std::vector<Insertion> ins{{a, xs[0]}, {b, xs[1]}, {cc, xs[2]}};
                    ModeOracleResult o = mode_oracle(M, ins, 26);
                    c.check(o.certified);
                    c.check(o.value == wick_correlator(M, ins));
                }
    }
}

void criterion6() {
    Criterion c("criterion-06 two-point convention lock on quasi-primary pairs");
    for (const VOAModel& m : {VOAModel::heisenberg(1), VOAModel::heisenberg(2),
                              VOAModel::lattice_model(a1_lattice())}) {
        FlatModel M(m);
        for (long k = 1; k <= 4; ++k) {
            if (m.kind == VOAModel::Kind::Lattice && k > 3) continue;
            for (const GradedVector& u : qp_kernel(M, k))
                for (const GradedVector& v : qp_kernel(M, k))
                    c.check(two_point_check(M, u, v, k, Rat(3), Rat(1)).match);
        }
        // the conformal vector pairs to c/2
        GradedVector nu = M.conformal_vector();
        c.check(bilinear(M, nu, nu) == Rat(M.central_charge()) / 2);
        c.check(two_point_check(M, nu, nu, 2, Rat(3), Rat(1)).match);
    }
}

void criterion7() {
    Criterion c("criterion-07 virasoro bracket with central charge r");
    for (int rank : {1, 2}) {
        FlatModel M(VOAModel::heisenberg(rank));
        for (int k = 0; k <= 6; ++k)
            for (const FockState& s : basis(rank, k)) {
                GradedVector v = state_of(s);
                for (long m = -4; m <= 4; ++m)
                    for (long n = -4; n <= 4; ++n) {
                        GradedVector lhs =
                            virasoro(M, m, virasoro(M, n, v)) - virasoro(M, n, virasoro(M, m, v));
                        GradedVector rhs = virasoro(M, m + n, v) * Rat(m - n);
                        if (m + n == 0) rhs = rhs + v * (Rat(rank) * rat(m * m * m - m, 12));
                        c.check(lhs == rhs);
                    }
                // primary commutation for the weight-one generator
                for (long m : {-1L, 0L, 1L})
                    for (long n = -3; n <= 3; ++n) {
                        GradedVector lhs = virasoro(M, m, heis_mode(M, 0, n, v)) -
                                           heis_mode(M, 0, n, virasoro(M, m, v));
                        c.check(lhs == heis_mode(M, 0, m + n, v) * Rat(-n));
                    }
            }
    }
}

long even_part_partitions(int w) {
    std::vector<std::vector<long>> even(size_t(w) + 1), odd(size_t(w) + 1);
    // direct count by recursion over partitions
    long count = 0;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int left, int maxp) -> void {
        if (left == 0) {
            if (parts.size() % 2 == 0) ++count;
            return;
        }
        for (int p = std::min(left, maxp); p >= 1; --p) {
            parts.push_back(p);
            self(self, left - p, p);
            parts.pop_back();
        }
    };
    rec(rec, w, w);
    return count;
}

void criterion8() {
    Criterion c("criterion-08 casimir subalgebra dimensions and trace orthogonality");
    FlatModel M(VOAModel::heisenberg(1));
    PVFiltration pv = pv_filtration(M, 8);
    c.check(pv.stabilized);
    c.check(pv.contains_conformal_vector);
    for (int w = 0; w <= 8; ++w) c.check(pv.dims[size_t(w)] == even_part_partitions(w));
    for (long d = 1; d <= 3; ++d) {
        TraceOrthogonalityReport rep = trace_orthogonality_check(M, pv, d, 4);
        c.check(rep.all_zero);
        for (long k = 1; k <= 4; ++k)
            c.check(rep.witness_traces[size_t(k)] ==
                    Rat(k) * Rat(colored_partition_count(1, int(k))));
    }
}

void criterion9() {
    Criterion c("criterion-09 bilocal decomposition coefficients recovered exactly");
    FlatModel M(VOAModel::heisenberg(1));
    bool any_mismatch_flagged = false;
    for (long k = 1; k <= 3; ++k) {
        GammaQpReport rep = gamma_qp_relation_check(M, k, Rat(3), Rat(1));
        c.check(rep.solved);
        c.check(rep.identity_recovered_exact);
        for (const GammaQpCoefficient& gc : rep.coefficients) {
            Rat want(factorial(unsigned(2 * gc.j - 1)),
                     factorial(unsigned(k - gc.j)) * factorial(unsigned(k + gc.j - 1)));
            want.canonicalize();
            c.check(gc.recovered == want);
        }
        if (!rep.printed_all_match) any_mismatch_flagged = true;
        if (k == 1) c.check(rep.printed_all_match);
    }
    // the report flags that the closed-form guess fails beyond the identity case
    c.check(any_mismatch_flagged);
}

void criterion10() {
    Criterion c("criterion-10 lattice data: root counts, deep theta, degree-2 agreement");
    EnumOptions counts_only;
    counts_only.store_vectors = false;
    c.check(enumerate_by_norm(e8_lattice(), 2).counts[2] == 240);
    EnumOptions fast;
    fast.store_vectors = false;
    fast.exact_prune = false;
    EnumResult leech = enumerate_by_norm(leech_lattice(), 4, fast);
    c.check(leech.counts.find(2) == leech.counts.end());
    c.check(leech.counts[4] == 196560);

    USeries d16 = theta_genus1(d16plus_lattice(), 6);
    USeries e8 = theta_genus1(e8_lattice(), 6);
    USeries e8sq = e8 * e8;
    for (int m = 0; m <= 6; ++m) c.check(d16[m] == e8sq[m]);

    EvenLattice sum{"E8E8", IntMat(16, std::vector<long>(16, 0))};
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = 0; j < 8; ++j) {
            sum.gram[i][j] = e8_lattice().gram[i][j];
            sum.gram[i + 8][j + 8] = e8_lattice().gram[i][j];
        }
    c.check(theta_genus2(d16plus_lattice(), 2) == theta_genus2(sum, 2));
}

void criterion11() {
    Criterion c("criterion-11 schottky round trips, region membership, plumbing");
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> pick(-9, 9);
    int done = 0;
    while (done < 50) {
        GQ W{Rat(pick(rng)), Rat(pick(rng)) / 3};
        GQ Z{Rat(pick(rng)), Rat(pick(rng)) / 3};
        if (W == Z) continue;
        GQ mu{Rat(pick(rng)) / 12, Rat(pick(rng)) / 12};
        Rat n2 = mu.norm2();
        if (is_zero(n2) || n2 >= 1) continue;
        ++done;
        WZQ coords = to_wzq(W, Z, mu);
        FixedPointData fp = fixed_points_multiplier(from_wzq(coords.w, coords.z, coords.q));
        c.check(fp.exact);
        c.check(fp.attracting == W);
        c.check(fp.repelling == Z);
        c.check(fp.multiplier == mu);
    }
    // region membership on the built-in fixtures
    SchottkyGenerators gens;
    gens.handles.push_back({GQ{Rat(13)}, GQ{Rat(7)}, GQ{rat(1, 64)}});
    gens.handles.push_back({GQ{Rat(3)}, GQ{Rat(1)}, GQ{rat(1, 64)}});
    URegionReport rep = in_U_gr(gens, rat(9, 10));
    c.check(rep.in_region);
    c.check(rep.plus_ordering);
    c.check(disks_disjoint(gens));
    // plumbing equivalence on 200 random rational samples
    WZQ gen{GQ{Rat(4)}, GQ{Rat(-2)}, GQ{Rat(-8)}};
    for (int repi = 0; repi < 200; ++repi) {
        GQ y{Rat(pick(rng)), Rat(pick(rng)) / 5};
        GQ x{Rat(pick(rng)), Rat(pick(rng)) / 5};
        if (y == GQ{Rat(-2)}) continue;
        c.check(plumbing_check(gen, x, y));
        MoebiusMap g = from_wzq(gen.w, gen.z, gen.q);
        c.check(plumbing_check(gen, g.apply(y), y));
    }
    c.check(plumbing_check(gen, GQ{Rat(4)}, std::nullopt));
}

void criterion12() {
    Criterion c("criterion-12 separating-shape degeneration at genus two");
    VOAModel m = VOAModel::heisenberg(1);
    PartitionRequest req;
    req.model = m;
    req.genus = 2;
    req.trunc = 3;
    req.points = g2a;
    SeparatingVariant sep;
    sep.i = 1;
    sep.w = Rat(40);
    sep.z = rat(1, 2);
    sep.extra_trunc = 1;
    req.separating = sep;
    QSeries z = partition_series(req);
    QSeries f1 = plain_series(m, 1, 3, PointConfig::of({g2a.w(0), g2a.z(0)}));
    QSeries f2 = plain_series(m, 1, 3, PointConfig::of({g2a.w(1), g2a.z(1)}));
    for (uint32_t n1 = 0; n1 <= 3; ++n1)
        for (uint32_t n2 = 0; n1 + n2 <= 3; ++n2)
            c.check(z.coeff({n1, n2, 0}) == f1.coeff({n1}) * f2.coeff({n2}));
}

void criterion13() {
    Criterion c("criterion-13 determinism across thread counts 1, 4, 16");
    for (const VOAModel& m : {VOAModel::heisenberg(2), VOAModel::lattice_model(a1_lattice())}) {
        QSeries t1 = plain_series(m, 2, 2, g2b, 1);
        QSeries t4 = plain_series(m, 2, 2, g2b, 4);
        QSeries t16 = plain_series(m, 2, 2, g2b, 16);
        c.check(t1 == t4);
        c.check(t1 == t16);
    }
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    criterion13();
    std::printf("%s: %d of 13 criteria failed\n", failures == 0 ? "OK" : "NOT OK", failures);
    return failures;
}
