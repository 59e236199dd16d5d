#ifndef VOAPF_FOCK_HPP
#define VOAPF_FOCK_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "voapf/linalg.hpp"
#include "voapf/rational.hpp"

namespace voapf {

// Integer Gram matrix of the weight-one generators. The identity matrix is
// the rank-r free boson with orthonormal generators; a lattice basis Gram
// gives the Heisenberg sector of the corresponding lattice theory.
using IntMat = std::vector<std::vector<long>>;

IntMat identity_mat(size_t n);

// One creation generator h^(color)_{-level}, level >= 1.
struct FockMode {
    int32_t color;
    int32_t level;
    auto operator<=>(const FockMode&) const = default;
};

// A monomial h^(c1)_{-n1} ... h^(ck)_{-nk} applied to the vacuum, stored as a
// sorted multiset so equal states compare equal. The empty word is the vacuum.
struct FockState {
    std::vector<FockMode> modes;

    void normalize();
    long weight() const;
    size_t size() const { return modes.size(); }
    auto operator<=>(const FockState&) const = default;

    std::string to_string() const; // "h[c,-n] h[c,-n] ..."
};

using Charge = std::vector<long>;

// A basis monomial of the full theory: a Fock word dressed with a charge
// (momentum) vector in lattice-basis coordinates. Pure free-boson states
// carry an all-zero or empty charge; the two spellings compare equal.
struct VoaState {
    FockState fock;
    Charge charge;

    bool neutral() const;
    bool operator==(const VoaState& o) const;
    bool operator<(const VoaState& o) const;
    std::string to_string() const;
};

// weight = sum of mode levels + <alpha, alpha>/2
long state_weight(const VoaState& s, const IntMat& gram);

// Finite linear combination of basis monomials with exact coefficients,
// homogeneous of one weight; zero coefficients are pruned on insertion.
class GradedVector {
  public:
    GradedVector() = default;
    explicit GradedVector(const VoaState& s, Rat c = 1) { add(s, c); }

    void add(const VoaState& s, const Rat& c);
    void add_scaled(const GradedVector& v, const Rat& c);
    GradedVector operator*(const Rat& c) const;
    GradedVector operator+(const GradedVector& o) const;
    GradedVector operator-(const GradedVector& o) const;
    bool operator==(const GradedVector& o) const { return terms_ == o.terms_; }

    bool is_zero() const { return terms_.empty(); }
    const std::map<VoaState, Rat>& terms() const { return terms_; }
    Rat coeff(const VoaState& s) const;

    std::string to_string() const;

  private:
    std::map<VoaState, Rat> terms_;
};

// ---- rank-r free boson M_r(1), orthonormal generators ----

// all r-colored mode multisets of total level k; count is the r-colored
// partition number of k
std::vector<FockState> basis(int rank, int weight);

long colored_partition_count(int colors, int weight);

// Fock inner product with h_n adjoint to h_{-n} and [h_m, h_n] = m G delta.
// Diagonal on monomials when G is the identity: prod over distinct modes of
// level^mult * mult!.
Rat scalar_product(const FockState& u, const FockState& v, const IntMat& gram);
Rat scalar_product(const FockState& u, const FockState& v); // orthonormal G

// The invariant bilinear form on M_r(1). The PCT convention here is
// theta h^(c) = -h^(c), forced by compatibility of the invariant form with
// h_n^dagger = h_{-n}; each generator then contributes a factor -1, so
// (u, v) = (-1)^{#modes(u)} <u|v>.
Rat bilinear_form(const FockState& u, const FockState& v);

// Bilinear-form Gram data at one weight.
struct BilinearGram {
    long weight = 0;
    std::vector<VoaState> basis;
    MatQ gram;
};

// dual basis v^i with (v_i, v^j) = delta_ij; monomial Gram is diagonal for
// M_r(1), so v^i = v_i / (v_i, v_i)
std::vector<GradedVector> dual_basis(int rank, int weight);

// ---- M_r(1) mode actions (wrappers over the general engine) ----

// h^(c)_n applied through [h_m, h_n] = m delta_{m,-n}, h_n vacuum = 0, n >= 0
GradedVector heis_mode_apply(int rank, int color, long n, const GradedVector& v);

// L_m action with the free-boson conformal vector; central charge r
GradedVector virasoro_mode(int rank, long m, const GradedVector& v);

// basis of ker(L_1 | V_k) for M_r(1)
std::vector<GradedVector> qp_subspace(int rank, int weight);

} // namespace voapf

#endif
