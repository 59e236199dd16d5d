#ifndef VOAPF_CORRELATORS_HPP
#define VOAPF_CORRELATORS_HPP

#include <optional>

#include "voapf/mode_engine.hpp"

namespace voapf {

// One field insertion: a state placed at an exact rational point.
struct Insertion {
    GradedVector state;
    Rat point;
};

// Sphere points w_1 > z_1 > ... > w_g > z_g > 0, strictly decreasing in
// absolute value and pairwise distinct.
class PointConfig {
  public:
    static PointConfig of(std::vector<Rat> pts);

    size_t genus() const { return pts_.size() / 2; }
    const Rat& w(size_t i) const { return pts_[2 * i]; }
    const Rat& z(size_t i) const { return pts_[2 * i + 1]; }
    const std::vector<Rat>& all() const { return pts_; }

  private:
    std::vector<Rat> pts_;
};

// Exact vacuum expectation value of a product of vertex operators at
// rational points. Every Fock mode of every inserted monomial becomes a
// derivative leg; legs pair across insertions or contract against the other
// insertions' charges, on top of the pure charge-sector prefactor.
Rat wick_correlator(const FlatModel& M, const std::vector<Insertion>& insertions);

struct ModeOracleResult {
    Rat value;
    bool certified = false;  // tails were resummed from the certified
                             // polynomial structure (or vanished)
    bool terminated = false; // every mode series was finite
};

// Direct Laurent-mode summation in the domain |x_1| > |x_2| > ... > |x_n|.
// Each contraction is an explicit mode series; partial sums run to `cutoff`
// and the geometric tails, whose coefficients are polynomial in the mode
// index of a structurally known degree, are added in closed form.
ModeOracleResult mode_oracle(const FlatModel& M, const std::vector<Insertion>& insertions,
                             long cutoff);

struct TwoPointCheck {
    Rat correlator;   // wick value of (vacuum, Y(u,w) Y(v,z) vacuum)
    Rat predicted;    // (-1)^k (u,v) (w-z)^(-2k)
    bool match = false;
};

// Convention lock for quasi-primary u, v of weight k.
TwoPointCheck two_point_check(const FlatModel& M, const GradedVector& u, const GradedVector& v,
                              long k, const Rat& w, const Rat& z);

} // namespace voapf

#endif
