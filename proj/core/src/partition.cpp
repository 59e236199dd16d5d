#include "voapf/partition.hpp"

#include <algorithm>

#include "voapf/threading.hpp"

namespace voapf {

namespace {

// all (n_1..n_g) with sum <= N, in lexicographic order
std::vector<std::vector<long>> weight_tuples(int g, int N) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(size_t(g), 0);
    auto rec = [&](auto&& self, size_t pos, long left) -> void {
        if (pos == size_t(g)) {
            out.push_back(cur);
            return;
        }
        for (long n = 0; n <= left; ++n) {
            cur[pos] = n;
            self(self, pos + 1, left - n);
        }
    };
    rec(rec, 0, N);
    return out;
}

Int tuple_cost(const FlatModel& M, const std::vector<long>& weights) {
    Int cost = 1;
    for (long n : weights)
        if (n > 0) cost *= M.graded_dim(n);
    return cost;
}

// iterate over dual-basis index tuples for the nonzero handles and sum the
// Wick values of the resulting 2g-point insertions (optionally with extras)
Rat casimir_sum(const FlatModel& M, const std::vector<long>& weights, const PointConfig& pts,
                const std::vector<Insertion>& extra) {
    std::vector<size_t> handles;
    for (size_t a = 0; a < weights.size(); ++a)
        if (weights[a] > 0) handles.push_back(a);

    std::vector<Insertion> ins(2 * handles.size() + extra.size());
    for (size_t e = 0; e < extra.size(); ++e) ins[2 * handles.size() + e] = extra[e];

    Rat acc = 0;
    auto rec = [&](auto&& self, size_t hi) -> void {
        if (hi == handles.size()) {
            acc += wick_correlator(M, ins);
            return;
        }
        size_t a = handles[hi];
        const std::vector<VoaState>& b = M.basis(weights[a]);
        const std::vector<GradedVector>& d = M.dual_basis(weights[a]);
        for (size_t i = 0; i < b.size(); ++i) {
            ins[2 * hi] = Insertion{GradedVector(b[i]), pts.w(a)};
            ins[2 * hi + 1] = Insertion{d[i], pts.z(a)};
            self(self, hi + 1);
        }
    };
    rec(rec, 0);
    return acc;
}

} // namespace

Rat casimir_pair_correlator(const FlatModel& M, const std::vector<long>& weights,
                            const PointConfig& pts) {
    require(weights.size() == pts.genus(), "casimir_pair_correlator: genus mismatch");
    for (long n : weights) require(n >= 0, "casimir_pair_correlator: negative weight");
    return casimir_sum(M, weights, pts, {});
}

QSeries partition_series(const PartitionRequest& req) {
    if (req.genus < 1) throw domain_error("partition_series: genus must be positive");
    if (req.trunc < 0) throw domain_error("partition_series: negative truncation");
    if (req.points.genus() != size_t(req.genus))
        throw domain_error("partition_series: point count does not match the genus");

    FlatModel M(req.model);
    std::vector<std::vector<long>> tuples = weight_tuples(req.genus, req.trunc);

    if (!req.separating) {
        // budget estimate: one Wick evaluation per dual-basis tuple
        Int cost = 0;
        for (const auto& t : tuples) cost += tuple_cost(M, t);
        if (cost > Int(std::to_string(req.budget)))
            throw budget_error("partition_series: estimated " + cost.get_str() +
                               " correlator evaluations exceed budget " +
                               std::to_string(req.budget));

        QSeries out(req.genus, req.trunc);
        std::vector<Rat> coeffs(tuples.size());
        parallel_for(tuples.size(), req.threads, [&](size_t i) {
            coeffs[i] = casimir_pair_correlator(M, tuples[i], req.points);
        });
        for (size_t i = 0; i < tuples.size(); ++i) {
            Exponent e(tuples[i].begin(), tuples[i].end());
            out.set_coeff(e, coeffs[i]);
        }
        return out;
    }

    // separating shape: handles 1..i with an extra insertion at w, handles
    // i+1..g with the dual insertion at z, summed over one dual basis and
    // weighted by the last variable
    const SeparatingVariant& sep = *req.separating;
    if (sep.i < 1 || sep.i > req.genus / 2)
        throw domain_error("partition_series: separating index out of range");
    if (sep.extra_trunc < 0)
        throw domain_error("partition_series: negative separating truncation");

    int g1 = sep.i, g2 = req.genus - sep.i;
    std::vector<Rat> pts1, pts2;
    for (int a = 0; a < g1; ++a) {
        pts1.push_back(req.points.w(size_t(a)));
        pts1.push_back(req.points.z(size_t(a)));
    }
    for (int a = g1; a < req.genus; ++a) {
        pts2.push_back(req.points.w(size_t(a)));
        pts2.push_back(req.points.z(size_t(a)));
    }
    PointConfig cfg1 = PointConfig::of(pts1);
    PointConfig cfg2 = PointConfig::of(pts2);

    std::vector<std::vector<long>> tuples1 = weight_tuples(g1, req.trunc);
    std::vector<std::vector<long>> tuples2 = weight_tuples(g2, req.trunc);

    Int cost = 0;
    for (long k = 0; k <= sep.extra_trunc; ++k) {
        Int dim = M.graded_dim(k);
        Int c1 = 0, c2 = 0;
        for (const auto& t : tuples1) c1 += tuple_cost(M, t);
        for (const auto& t : tuples2) c2 += tuple_cost(M, t);
        cost += dim * (c1 + c2);
    }
    if (cost > Int(std::to_string(req.budget)))
        throw budget_error("partition_series: estimated " + cost.get_str() +
                           " correlator evaluations exceed budget " +
                           std::to_string(req.budget));

    QSeries out(req.genus + 1, req.trunc + sep.extra_trunc);
    for (long k = 0; k <= sep.extra_trunc; ++k) {
        const std::vector<VoaState>& bk = M.basis(k);
        const std::vector<GradedVector>& dk = M.dual_basis(k);
        for (size_t j = 0; j < bk.size(); ++j) {
            // factor with handles 1..i and the state insertion at w
            QSeries f1(g1, req.trunc);
            std::vector<Rat> c1(tuples1.size());
            parallel_for(tuples1.size(), req.threads, [&](size_t t) {
                c1[t] = casimir_sum(M, tuples1[t], cfg1,
                                    {Insertion{GradedVector(bk[j]), sep.w}});
            });
            for (size_t t = 0; t < tuples1.size(); ++t)
                f1.set_coeff(Exponent(tuples1[t].begin(), tuples1[t].end()), c1[t]);

            // factor with handles i+1..g and the dual insertion at z
            QSeries f2(g2, req.trunc);
            std::vector<Rat> c2(tuples2.size());
            parallel_for(tuples2.size(), req.threads, [&](size_t t) {
                c2[t] = casimir_sum(M, tuples2[t], cfg2, {Insertion{dk[j], sep.z}});
            });
            for (size_t t = 0; t < tuples2.size(); ++t)
                f2.set_coeff(Exponent(tuples2[t].begin(), tuples2[t].end()), c2[t]);

            // assemble into g+1 variables, the separating weight last
            for (const auto& [e1, v1] : f1.terms())
                for (const auto& [e2, v2] : f2.terms()) {
                    Exponent e(size_t(req.genus) + 1, 0);
                    for (int a = 0; a < g1; ++a) e[size_t(a)] = e1[size_t(a)];
                    for (int a = 0; a < g2; ++a) e[size_t(g1 + a)] = e2[size_t(a)];
                    e[size_t(req.genus)] = uint32_t(k);
                    out.add_term(e, v1 * v2);
                }
        }
    }
    return out;
}

QSeries genus1_oracle(const VOAModel& model, int trunc, const Rat& w, const Rat& z) {
    require(trunc >= 0, "genus1_oracle: negative truncation");
    if (w == z) throw pole_error("genus1_oracle: coincident points");
    FlatModel M(model);
    USeries dims(trunc);
    for (int n = 0; n <= trunc; ++n) dims[n] = Rat(M.graded_dim(n));
    QSeries out(1, trunc);
    if (trunc == 0) {
        out.set_coeff({0}, dims[0]);
        return out;
    }
    USeries mu = lagrange_invert_mu(trunc);
    USeries in_t = useries_compose(dims, mu);
    // t = q / (w-z)^2
    USeries in_q = in_t.scale_variable(Rat(1) / ((w - z) * (w - z)));
    return in_q.to_qseries();
}

QSeries normalized_partition(const VOAModel& model, int genus, int trunc,
                             const PointConfig& pts, int threads) {
    PartitionRequest req;
    req.model = model;
    req.genus = genus;
    req.trunc = trunc;
    req.points = pts;
    req.threads = threads;
    QSeries z_model = partition_series(req);

    req.model = VOAModel::heisenberg(1);
    QSeries z_free = partition_series(req);

    long c = model.central_charge();
    require(c >= 0, "normalized_partition: negative central charge");
    return z_model * z_free.inverse().pow(unsigned(c));
}

bool tensor_partition_check(const VOAModel& a, const VOAModel& b, int genus, int trunc,
                            const PointConfig& pts, int threads) {
    PartitionRequest req;
    req.genus = genus;
    req.trunc = trunc;
    req.points = pts;
    req.threads = threads;

    req.model = VOAModel::tensor({a, b});
    QSeries lhs = partition_series(req);

    req.model = a;
    QSeries za = partition_series(req);
    req.model = b;
    QSeries zb = partition_series(req);

    return lhs == za * zb;
}

CompareResult compare_partitions(const VOAModel& a, const VOAModel& b, int genus, int trunc,
                                 const PointConfig& pts, int threads) {
    CompareResult out;
    out.charge_mismatch_warning = a.central_charge() != b.central_charge();

    PartitionRequest req;
    req.genus = genus;
    req.trunc = trunc;
    req.points = pts;
    req.threads = threads;
    req.model = a;
    QSeries za = partition_series(req);
    req.model = b;
    QSeries zb = partition_series(req);

    // lexicographically first differing exponent
    std::vector<Exponent> keys;
    for (const auto& [e, v] : za.terms()) keys.push_back(e);
    for (const auto& [e, v] : zb.terms()) keys.push_back(e);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const Exponent& e : keys) {
        Rat va = za.coeff(e), vb = zb.coeff(e);
        if (va != vb) {
            out.equal = false;
            out.first_difference = e;
            out.lhs = va;
            out.rhs = vb;
            return out;
        }
    }
    return out;
}

} // namespace voapf
