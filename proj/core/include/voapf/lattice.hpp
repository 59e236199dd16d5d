#ifndef VOAPF_LATTICE_HPP
#define VOAPF_LATTICE_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "voapf/fock.hpp"
#include "voapf/qseries.hpp"

namespace voapf {

// Integral lattice with even diagonal and positive definite Gram matrix,
// given in a fixed basis. Charges of lattice theory states are coordinate
// vectors in this basis.
struct EvenLattice {
    std::string name;
    IntMat gram;

    size_t rank() const { return gram.size(); }
    long inner(const Charge& a, const Charge& b) const;
    long norm(const Charge& a) const { return inner(a, a); }

    // throws lattice_error unless symmetric, even-diagonal, positive definite
    void validate() const;
};

// 2-cocycle sign for the multiplication of charge sectors:
// eps(a, b) = (-1)^(a^T B b), B = strict lower triangle of G plus G_ii/2 on
// the diagonal. Then eps(a,b) eps(b,a) = (-1)^<a,b>, which is what vertex
// operator locality requires on an even lattice.
class Cocycle {
  public:
    Cocycle() = default;
    explicit Cocycle(const EvenLattice& L);
    int sign(const Charge& a, const Charge& b) const; // +1 or -1

  private:
    std::vector<std::vector<long>> b_;
};

struct EnumOptions {
    // exact: prune with exact rational arithmetic on the Cholesky form.
    // Otherwise prune in extended precision with conservative slack; every
    // accepted vector is still verified against the integer Gram exactly.
    bool exact_prune = true;
    bool store_vectors = true;
};

struct EnumResult {
    // norm -> exact count
    std::map<long, Int> counts;
    // norm -> coordinate vectors (when store_vectors)
    std::map<long, std::vector<Charge>> vectors;
};

// All lattice vectors with <x,x> <= maxnorm, by bounded search on the
// rational Cholesky decomposition of the Gram matrix.
EnumResult enumerate_by_norm(const EvenLattice& L, long maxnorm,
                             const EnumOptions& opts = {});

// Theta series: coefficient of q^m counts vectors of norm 2m, so the E8
// series starts 1 + 240 q + 2160 q^2.
USeries theta_genus1(const EvenLattice& L, int trunc);

// Degree-2 representation numbers: key {a, c, b2} counts ordered pairs
// (v1, v2) with <v1,v1> = 2a, <v2,v2> = 2c, <v1,v2> = b2. Diagonal bounded
// by maxT.
std::map<std::array<long, 3>, Int> theta_genus2(const EvenLattice& L, long maxT);

// dim of the weight-n graded piece of the lattice theory:
// sum_m r_L(2m) p_rank(n - m)
Int lattice_voa_graded_dim(const EvenLattice& L, int n);

// built-in lattices
EvenLattice a1_lattice();
EvenLattice e8_lattice();
EvenLattice d16plus_lattice();
EvenLattice leech_lattice();
EvenLattice trivial_lattice(); // rank 0

// named lookup used by the CLI ("A1", "E8", "D16plus", "Leech")
EvenLattice builtin_lattice(const std::string& name);

// test support: row-style Hermite basis of the integer row span
std::vector<std::vector<Int>> hnf_row_basis(std::vector<std::vector<Int>> gens);

// The extended [24,12,8] binary Golay code used by the Leech construction;
// 12 generator rows of 24 bits each.
std::vector<std::array<int, 24>> golay_generators();

} // namespace voapf

#endif
