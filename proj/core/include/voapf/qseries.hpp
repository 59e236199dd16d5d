#ifndef VOAPF_QSERIES_HPP
#define VOAPF_QSERIES_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "voapf/rational.hpp"

namespace voapf {

using Exponent = std::vector<uint32_t>;

// Truncated multivariate power series in the sewing parameters q_1..q_g,
// exact rational coefficients, sparse exponent storage. Truncation is by
// total degree; an optional per-variable cap can be set on top of it.
class QSeries {
  public:
    QSeries() : num_vars_(0), trunc_(0) {}
    QSeries(int num_vars, int trunc) : num_vars_(num_vars), trunc_(trunc) {
        require(num_vars >= 0 && trunc >= 0, "QSeries: bad shape");
    }

    static QSeries constant(int num_vars, int trunc, const Rat& c);
    static QSeries one(int num_vars, int trunc) { return constant(num_vars, trunc, 1); }
    // the monomial q_i (zero when trunc < 1)
    static QSeries variable(int num_vars, int trunc, int i);

    int num_vars() const { return num_vars_; }
    int truncation() const { return trunc_; }
    void set_per_var_cap(int cap) { per_var_cap_ = cap; prune(); }
    int per_var_cap() const { return per_var_cap_; }

    const std::map<Exponent, Rat>& terms() const { return terms_; }

    Rat coeff(const Exponent& e) const;
    void set_coeff(const Exponent& e, const Rat& c);
    void add_term(const Exponent& e, const Rat& c);

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Rat& c) const;
    QSeries operator-() const { return *this * Rat(-1); }

    bool operator==(const QSeries& o) const;

    friend QSeries qseries_mul(const QSeries& a, const QSeries& b) { return a * b; }

    // multiplicative inverse; requires a nonzero constant term
    QSeries inverse() const;
    QSeries pow(unsigned e) const;

  private:
    void check_same_shape(const QSeries& o) const;
    bool admissible(const Exponent& e) const;
    void prune();

    int num_vars_;
    int trunc_;
    int per_var_cap_ = -1; // -1 = no per-variable cap
    std::map<Exponent, Rat> terms_;
};

QSeries qseries_inv(const QSeries& a);

// One-variable dense truncated series, coefficients indexed 0..N.
class USeries {
  public:
    USeries() : coeffs_(1, Rat(0)) {}
    explicit USeries(int trunc) : coeffs_(size_t(trunc) + 1, Rat(0)) {
        require(trunc >= 0, "USeries: bad truncation");
    }
    explicit USeries(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
        require(!coeffs_.empty(), "USeries: empty");
    }

    int truncation() const { return int(coeffs_.size()) - 1; }
    const Rat& operator[](int i) const { return coeffs_[size_t(i)]; }
    Rat& operator[](int i) { return coeffs_[size_t(i)]; }

    USeries truncated(int new_trunc) const;

    USeries operator+(const USeries& o) const;
    USeries operator-(const USeries& o) const;
    USeries operator*(const USeries& o) const;
    USeries operator*(const Rat& c) const;
    bool operator==(const USeries& o) const { return coeffs_ == o.coeffs_; }

    USeries inverse() const;
    USeries pow(unsigned e) const;

    bool is_zero() const;

    // map t^n -> (scale^n) t^n; used to re-express t = q/(w-z)^2 in q
    USeries scale_variable(const Rat& scale) const;

    // promote to a one-variable QSeries (same truncation)
    QSeries to_qseries() const;

  private:
    std::vector<Rat> coeffs_;
};

// outer(inner(t)); inner must have zero constant term
USeries useries_compose(const USeries& outer, const USeries& inner);

// The series mu(t) with zero constant term solving mu/(1+mu)^2 = -t,
// computed by iterating mu <- -t(1+mu)^2 to the fixed point mod t^(N+1).
// Coefficients are signed Catalan numbers: -t + 2t^2 - 5t^3 + 14t^4 - ...
USeries lagrange_invert_mu(int trunc);

// r-colored partition counting series prod_m (1-t^m)^(-r), truncated
USeries colored_partition_series(int colors, int trunc);

} // namespace voapf

#endif
