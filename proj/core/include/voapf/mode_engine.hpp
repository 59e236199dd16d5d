#ifndef VOAPF_MODE_ENGINE_HPP
#define VOAPF_MODE_ENGINE_HPP

#include "voapf/model.hpp"

namespace voapf {

// a_m b with the graded-mode convention Y(z^{L0} a, z) = sum_m a_m z^{-m},
// so a_m lowers weight by m. Computed from the normal-ordered free-field
// form of Y(a, z): one derivative leg per Fock mode of a, exponential
// dressing for the charge of a, zero modes reading the charge of b.
GradedVector apply_graded_mode(const FlatModel& M, const VoaState& a, long m, const VoaState& b);
GradedVector apply_graded_mode(const FlatModel& M, const GradedVector& a, long m,
                               const GradedVector& b);

// h^(color)_n on a graded vector
GradedVector heis_mode(const FlatModel& M, int color, long n, const GradedVector& v);

// L_m as the graded mode of the conformal vector
GradedVector virasoro(const FlatModel& M, long m, const GradedVector& v);

// L_{-1}^j a / j!
GradedVector translation_descendant(const FlatModel& M, const GradedVector& a, int j);

// basis of ker(L_1 | V_k) together with nothing else; see fock.hpp wrappers
std::vector<GradedVector> qp_kernel(const FlatModel& M, long k);

// dual family of a subspace under the invariant bilinear form restricted to
// it; spans.size() vectors with (spans[i], duals[j]) = delta_ij
std::vector<GradedVector> dual_family(const FlatModel& M, const std::vector<GradedVector>& spans);

Rat bilinear(const FlatModel& M, const GradedVector& u, const GradedVector& v);
Rat scalar(const FlatModel& M, const GradedVector& u, const GradedVector& v);

} // namespace voapf

#endif
