#ifndef VOAPF_PARTITION_HPP
#define VOAPF_PARTITION_HPP

#include <optional>

#include "voapf/correlators.hpp"
#include "voapf/qseries.hpp"

namespace voapf {

struct SeparatingVariant {
    int i = 1;          // which separating shape, 1 <= i <= g/2
    Rat w, z;           // the two extra insertion points
    int extra_trunc = 0; // highest weight summed through the separating handle
};

struct PartitionRequest {
    VOAModel model;
    int genus = 1;
    int trunc = 0;
    PointConfig points;
    std::optional<SeparatingVariant> separating;
    long long budget = 10000000;  // max elementary correlator evaluations
    int threads = 1;
};

// sum over dual-basis tuples of the Casimir bilocal contraction at the
// given handle weights: n_i = 0 contributes the identity
Rat casimir_pair_correlator(const FlatModel& M, const std::vector<long>& weights,
                            const PointConfig& pts);

// The genus-g series: coefficient of q_1^{n_1}...q_g^{n_g} is the vacuum
// expectation of the product of weight-n_i bilocal contractions. The
// separating variant carries one extra variable for the separating handle.
QSeries partition_series(const PartitionRequest& req);

// Tr mu^{L_0} with mu/(1+mu)^2 = -q/(w-z)^2, re-expanded in q; this sees
// only the graded dimensions, not the vertex operators
QSeries genus1_oracle(const VOAModel& model, int trunc, const Rat& w, const Rat& z);

// partition series divided by the c-th power of the rank-one free boson
// series at the same points
QSeries normalized_partition(const VOAModel& model, int genus, int trunc,
                             const PointConfig& pts, int threads = 1);

// full tensor-basis series against the product of the factor series
bool tensor_partition_check(const VOAModel& a, const VOAModel& b, int genus, int trunc,
                            const PointConfig& pts, int threads = 1);

struct CompareResult {
    bool equal = true;
    bool charge_mismatch_warning = false;
    Exponent first_difference;
    Rat lhs, rhs;
};

CompareResult compare_partitions(const VOAModel& a, const VOAModel& b, int genus, int trunc,
                                 const PointConfig& pts, int threads = 1);

} // namespace voapf

#endif
