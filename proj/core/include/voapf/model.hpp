#ifndef VOAPF_MODEL_HPP
#define VOAPF_MODEL_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "voapf/fock.hpp"
#include "voapf/lattice.hpp"

namespace voapf {

// Model selector: free boson of a given rank, lattice theory, or a tensor
// product of such. Central charge equals the total rank in every case.
struct VOAModel {
    enum class Kind { Heisenberg, Lattice, Tensor };

    Kind kind = Kind::Heisenberg;
    int heis_rank = 1;
    EvenLattice lattice;
    std::vector<VOAModel> factors;

    static VOAModel heisenberg(int rank);
    static VOAModel lattice_model(EvenLattice L);
    static VOAModel tensor(std::vector<VOAModel> factors);

    long central_charge() const;
    std::string describe() const;

    // a holomorphic theory needs central charge divisible by 8 and, for a
    // lattice model, a unimodular lattice; throws domain_error otherwise
    void check_holomorphic_claim() const;
};

// The tensor product of free-boson and lattice theories is the same kind of
// theory on the orthogonal sum of the data, so every model flattens to a
// single Gram matrix plus the sublattice of allowed charges. All engines
// work on this flat form.
class FlatModel {
  public:
    explicit FlatModel(const VOAModel& m);

    const VOAModel& source() const { return source_; }
    size_t rank() const { return gram_.size(); }
    long central_charge() const { return long(rank()); }
    const IntMat& gram() const { return gram_; }
    bool has_charges() const { return charge_rank_ > 0; }

    long weight(const VoaState& s) const { return state_weight(s, gram_); }

    // <u|v> with [h_m, h_n] = m G delta; charges must agree
    Rat scalar(const VoaState& u, const VoaState& v) const;

    // normalized invariant bilinear form; pairs charge alpha with -alpha
    Rat bilinear(const VoaState& u, const VoaState& v) const;

    int cocycle_sign(const Charge& a, const Charge& b) const;

    // kappa(alpha) = (-1)^(<a,a>/2) eps(a,-a): the bilinear self-pairing of
    // the bare charge sector
    Rat charge_pairing(const Charge& a) const;

    // all charges of norm <= 2*w, embedded in full-rank coordinates
    std::vector<Charge> charges_with_halfnorm_up_to(long w) const;

    const std::vector<VoaState>& basis(long k) const;
    const std::vector<GradedVector>& dual_basis(long k) const;

    Int graded_dim(long k) const;

    GradedVector vacuum() const { return GradedVector(VoaState{{}, Charge(rank(), 0)}); }
    GradedVector conformal_vector() const;

    // memo table for single-state graded-mode applications, shared by the
    // mode engine; read-mostly behind a mutex
    const GradedVector* mode_memo_find(const VoaState& a, long m, const VoaState& b) const;
    const GradedVector* mode_memo_store(const VoaState& a, long m, const VoaState& b,
                                        GradedVector value) const;


    // inverse Gram of the generators, used by the Virasoro modes
    const MatQ& gram_inverse() const { return gram_inv_; }

  private:
    struct Cache;

    VOAModel source_;
    IntMat gram_;
    MatQ gram_inv_;
    // charges live in the lattice-block coordinates; heisenberg coordinates
    // stay zero. charge_embed_[i] = full-rank index of charge coordinate i.
    std::vector<size_t> charge_embed_;
    size_t charge_rank_ = 0;
    EvenLattice charge_lattice_;
    Cocycle cocycle_;
    std::shared_ptr<Cache> cache_;

    Charge project_charge(const Charge& full) const;
};

// Invariant-bilinear-form data of the lattice theory at one weight:
// (u e^a, v e^b) vanishes unless b = -a and otherwise carries the Fock
// pairing times (-1)^{#modes(u)} kappa(a); assembled blockwise over
// opposite-charge pairs.
BilinearGram lattice_bilinear_gram(const EvenLattice& L, long k);

} // namespace voapf

#endif
