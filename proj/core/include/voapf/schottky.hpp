#ifndef VOAPF_SCHOTTKY_HPP
#define VOAPF_SCHOTTKY_HPP

#include <optional>
#include <string>
#include <vector>

#include "voapf/rational.hpp"

namespace voapf {

// Gaussian rational a + b i
struct GQ {
    Rat re, im;

    GQ() : re(0), im(0) {}
    GQ(Rat r) : re(std::move(r)), im(0) {}
    GQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return voapf::is_zero(re) && voapf::is_zero(im); }
    bool is_real() const { return voapf::is_zero(im); }
    Rat norm2() const { return re * re + im * im; } // |.|^2

    GQ operator+(const GQ& o) const { return {re + o.re, im + o.im}; }
    GQ operator-(const GQ& o) const { return {re - o.re, im - o.im}; }
    GQ operator-() const { return {-re, -im}; }
    GQ operator*(const GQ& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GQ operator/(const GQ& o) const;
    bool operator==(const GQ& o) const { return re == o.re && im == o.im; }

    std::string to_string() const;
};

// square root in Q(i) when one exists
std::optional<GQ> sqrt_gaussian(const GQ& z);

// A Moebius map x -> (a x + b)/(c x + d) with exact Gaussian-rational
// entries. Entries are kept projectively; normalize() rescales to
// determinant one whenever the determinant is a square in Q(i).
struct MoebiusMap {
    GQ a, b, c, d;

    GQ det() const { return a * d - b * c; }
    MoebiusMap compose(const MoebiusMap& o) const;
    MoebiusMap inverse() const; // entries swapped, same determinant

    // value at a finite point; nullopt encodes infinity
    std::optional<GQ> apply(const std::optional<GQ>& x) const;

    bool normalize(); // true when determinant-one scaling exists over Q(i)
    bool is_identity_projective() const;
};

// the generator x -> w + q / (x - z); q != 0
MoebiusMap from_wzq(const GQ& w, const GQ& z, const GQ& q);

// (w, z, q) from fixed points and multiplier:
// w = (W - mu Z)/(1 - mu), z = (Z - mu W)/(1 - mu), q = -mu (W-Z)^2/(1-mu)^2
struct WZQ {
    GQ w, z, q;
};
WZQ to_wzq(const GQ& W, const GQ& Z, const GQ& mu);

struct FixedPointData {
    bool exact = true;   // fixed points lie in Q(i)
    GQ attracting, repelling, multiplier;
    // on irrational discriminants: certified enclosures of the same data,
    // each component a [lo, hi] rational interval
    Rat att_re_lo, att_re_hi, att_im_lo, att_im_hi;
    Rat rep_re_lo, rep_re_hi, rep_im_lo, rep_im_hi;
    Rat mul_re_lo, mul_re_hi, mul_im_lo, mul_im_hi;
};

// attracting/repelling fixed points and multiplier of a loxodromic map;
// throws not_loxodromic_error otherwise
FixedPointData fixed_points_multiplier(const MoebiusMap& m);

struct SchottkyGenerators {
    // one (w, z, q) triple per handle
    std::vector<WZQ> handles;
};

struct URegionReport {
    bool in_region = false;   // 0 < |q_i| < r^2 and all center gaps > 2r
    bool plus_ordering = false; // |w_1| > |z_1| > |w_2| > ... > |z_g|
};

URegionReport in_U_gr(const SchottkyGenerators& gens, const Rat& r);

// x ~ y under the i-th generator iff (x - w_i)(y - z_i) = q_i; y = infinity
// pairs with x = w_i
bool plumbing_check(const WZQ& gen, const std::optional<GQ>& x, const std::optional<GQ>& y);

// disks of radius sqrt|q_i| around every w_i and z_i are pairwise disjoint;
// decided exactly through squared-distance comparisons
bool disks_disjoint(const SchottkyGenerators& gens);

} // namespace voapf

#endif
