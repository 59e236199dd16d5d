#include <doctest.h>

#include "voapf/eta.hpp"
#include "voapf/partition.hpp"

using namespace voapf;

namespace {

PartitionRequest plain(const VOAModel& m, int genus, int trunc, PointConfig pts) {
    PartitionRequest req;
    req.model = m;
    req.genus = genus;
    req.trunc = trunc;
    req.points = std::move(pts);
    return req;
}

const PointConfig g1a = PointConfig::of({Rat(3), Rat(1)});
const PointConfig g1b = PointConfig::of({Rat(7), Rat(2)});
const PointConfig g2a = PointConfig::of({Rat(13), Rat(7), Rat(3), Rat(1)});

} // namespace

TEST_CASE("bilocal contraction values for the rank-one free boson") {
    FlatModel M(VOAModel::heisenberg(1));
    CHECK(casimir_pair_correlator(M, {0}, g1a) == 1);
    CHECK(casimir_pair_correlator(M, {1}, g1a) == rat(-1, 4));
    CHECK(casimir_pair_correlator(M, {2}, g1a) == rat(1, 4)); // 4 (w-z)^(-4)
}

TEST_CASE("rank-one genus-1 series at depth 2") {
    QSeries z = partition_series(plain(VOAModel::heisenberg(1), 1, 2, g1a));
    CHECK(z.coeff({0}) == 1);
    CHECK(z.coeff({1}) == rat(-1, 4));
    CHECK(z.coeff({2}) == rat(1, 4));
}

TEST_CASE("depth zero keeps only the constant term") {
    for (const VOAModel& m :
         {VOAModel::heisenberg(1), VOAModel::lattice_model(a1_lattice())}) {
        QSeries z = partition_series(plain(m, 1, 0, g1a));
        CHECK(z == QSeries::one(1, 0));
    }
}

TEST_CASE("genus-1 oracle values") {
    QSeries z = genus1_oracle(VOAModel::heisenberg(1), 2, Rat(3), Rat(1));
    CHECK(z.coeff({0}) == 1);
    CHECK(z.coeff({1}) == rat(-1, 4));
    CHECK(z.coeff({2}) == rat(1, 4));
    // trivial theory has constant series
    QSeries t = genus1_oracle(VOAModel::heisenberg(0), 3, Rat(3), Rat(1));
    CHECK(t == QSeries::one(1, 3));
}

TEST_CASE("genus-1 master identity for free bosons") {
    for (const PointConfig& pts : {g1a, g1b}) {
        QSeries lhs = partition_series(plain(VOAModel::heisenberg(1), 1, 6, pts));
        QSeries rhs = genus1_oracle(VOAModel::heisenberg(1), 6, pts.w(0), pts.z(0));
        CHECK(lhs == rhs);
        QSeries lhs2 = partition_series(plain(VOAModel::heisenberg(2), 1, 4, pts));
        QSeries rhs2 = genus1_oracle(VOAModel::heisenberg(2), 4, pts.w(0), pts.z(0));
        CHECK(lhs2 == rhs2);
    }
}

TEST_CASE("genus-1 master identity for the A1 lattice theory") {
    VOAModel m = VOAModel::lattice_model(a1_lattice());
    for (const PointConfig& pts : {g1a, g1b}) {
        QSeries lhs = partition_series(plain(m, 1, 3, pts));
        QSeries rhs = genus1_oracle(m, 3, pts.w(0), pts.z(0));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("constant term of every series is one") {
    for (const VOAModel& m : {VOAModel::heisenberg(1), VOAModel::heisenberg(2),
                              VOAModel::lattice_model(a1_lattice())}) {
        QSeries z1 = partition_series(plain(m, 1, 2, g1a));
        CHECK(z1.coeff({0}) == 1);
        QSeries z2 = partition_series(plain(m, 2, 2, g2a));
        CHECK(z2.coeff({0, 0}) == 1);
    }
}

TEST_CASE("point independence after rescaling by (w-z)^2") {
    VOAModel m = VOAModel::heisenberg(1);
    QSeries a = partition_series(plain(m, 1, 4, g1a));
    QSeries b = partition_series(plain(m, 1, 4, g1b));
    Rat sa = (g1a.w(0) - g1a.z(0)) * (g1a.w(0) - g1a.z(0));
    Rat sb = (g1b.w(0) - g1b.z(0)) * (g1b.w(0) - g1b.z(0));
    for (uint32_t n = 0; n <= 4; ++n)
        CHECK(a.coeff({n}) * pow_rat(sa, n) == b.coeff({n}) * pow_rat(sb, n));
}

TEST_CASE("free-boson normalization is exactly one") {
    for (int r : {1, 2}) {
        QSeries n1 = normalized_partition(VOAModel::heisenberg(r), 1, 3, g1a);
        CHECK(n1 == QSeries::one(1, 3));
        QSeries n2 = normalized_partition(VOAModel::heisenberg(r), 2, 3, g2a);
        CHECK(n2 == QSeries::one(2, 3));
    }
}

TEST_CASE("multiplicativity through the tensor basis") {
    VOAModel h1 = VOAModel::heisenberg(1);
    CHECK(tensor_partition_check(h1, h1, 1, 3, g1a));
    CHECK(tensor_partition_check(h1, h1, 2, 2, g2a));
    CHECK(tensor_partition_check(h1, VOAModel::lattice_model(a1_lattice()), 1, 2, g1a));
    // the trivial factor changes nothing
    CHECK(tensor_partition_check(h1, VOAModel::heisenberg(0), 1, 3, g1a));
}

TEST_CASE("normalized lattice series equals the theta pullback") {
    // theta composed with mu, re-expanded in q = t (w-z)^2
    VOAModel m = VOAModel::lattice_model(a1_lattice());
    int N = 3;
    QSeries lhs = normalized_partition(m, 1, N, g1a);
    USeries theta = theta_genus1(a1_lattice(), N);
    USeries mu = lagrange_invert_mu(N);
    USeries pullback = useries_compose(theta, mu);
    QSeries rhs =
        pullback.scale_variable(Rat(1) / ((g1a.w(0) - g1a.z(0)) * (g1a.w(0) - g1a.z(0))))
            .to_qseries();
    CHECK(lhs == rhs);
}

TEST_CASE("comparison finds the first differing exponent") {
    VOAModel a = VOAModel::heisenberg(1), b = VOAModel::heisenberg(2);
    CompareResult same = compare_partitions(a, a, 1, 3, g1a);
    CHECK(same.equal);
    CompareResult diff = compare_partitions(a, b, 1, 3, g1a);
    CHECK(!diff.equal);
    CHECK(diff.first_difference == Exponent{1});
    CHECK(diff.charge_mismatch_warning);
}

TEST_CASE("separating degeneration at genus two") {
    VOAModel m = VOAModel::heisenberg(1);
    PartitionRequest req = plain(m, 2, 3, g2a);
    SeparatingVariant sep;
    sep.i = 1;
    sep.w = Rat(40);
    sep.z = Rat(1, 2);
    sep.extra_trunc = 1;
    req.separating = sep;
    QSeries z = partition_series(req);
    CHECK(z.num_vars() == 3);

    // the separating-weight-zero part factors into the two genus-1 series
    QSeries f1 = partition_series(plain(m, 1, 3, PointConfig::of({g2a.w(0), g2a.z(0)})));
    QSeries f2 = partition_series(plain(m, 1, 3, PointConfig::of({g2a.w(1), g2a.z(1)})));
    for (uint32_t n1 = 0; n1 <= 3; ++n1)
        for (uint32_t n2 = 0; n1 + n2 <= 3; ++n2)
            CHECK(z.coeff({n1, n2, 0}) == f1.coeff({n1}) * f2.coeff({n2}));
}

TEST_CASE("separating variant validates its index") {
    PartitionRequest req = plain(VOAModel::heisenberg(1), 2, 1, g2a);
    SeparatingVariant sep;
    sep.i = 2; // needs i <= g/2 = 1
    sep.w = Rat(40);
    sep.z = Rat(1, 2);
    req.separating = sep;
    CHECK_THROWS_AS(partition_series(req), domain_error);
}

TEST_CASE("budget guard rejects infeasible runs before starting") {
    PartitionRequest req = plain(VOAModel::heisenberg(2), 1, 6, g1a);
    req.budget = 10;
    CHECK_THROWS_AS(partition_series(req), budget_error);
}

TEST_CASE("thread count does not change results") {
    PartitionRequest req = plain(VOAModel::heisenberg(2), 2, 2, g2a);
    req.threads = 1;
    QSeries a = partition_series(req);
    req.threads = 4;
    QSeries b = partition_series(req);
    req.threads = 16;
    QSeries c = partition_series(req);
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("moonshine graded dimensions from the modular j function") {
    // independent eta-quotient route to the c = 24 character table
    std::vector<Int> dims = moonshine_graded_dims(4);
    CHECK(dims[0] == 1);
    CHECK(dims[1] == 0);
    CHECK(dims[2] == 196884);
    CHECK(dims[3] == 21493760);
    CHECK(dims[4] == 864299970);
}
