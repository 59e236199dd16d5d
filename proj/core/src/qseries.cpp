#include "voapf/qseries.hpp"

#include <algorithm>
#include <numeric>

namespace voapf {

bool sqrt_exact(const Rat& x, Rat& root) {
    if (sgn(x) < 0) return false;
    if (sgn(x) == 0) {
        root = 0;
        return true;
    }
    Int num = x.get_num(), den = x.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rat(rn, rd);
    root.canonicalize();
    return true;
}

QSeries QSeries::constant(int num_vars, int trunc, const Rat& c) {
    QSeries s(num_vars, trunc);
    if (!is_zero(c)) s.terms_[Exponent(size_t(num_vars), 0)] = c;
    return s;
}

QSeries QSeries::variable(int num_vars, int trunc, int i) {
    require(i >= 0 && i < num_vars, "QSeries::variable: index out of range");
    QSeries s(num_vars, trunc);
    if (trunc >= 1) {
        Exponent e(size_t(num_vars), 0);
        e[size_t(i)] = 1;
        s.terms_[e] = 1;
    }
    return s;
}

Rat QSeries::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

bool QSeries::admissible(const Exponent& e) const {
    uint64_t total = 0;
    for (uint32_t n : e) {
        if (per_var_cap_ >= 0 && n > uint32_t(per_var_cap_)) return false;
        total += n;
    }
    return total <= uint64_t(trunc_);
}

void QSeries::set_coeff(const Exponent& e, const Rat& c) {
    require(e.size() == size_t(num_vars_), "QSeries::set_coeff: wrong arity");
    if (!admissible(e)) return;
    if (is_zero(c))
        terms_.erase(e);
    else
        terms_[e] = c;
}

void QSeries::add_term(const Exponent& e, const Rat& c) {
    require(e.size() == size_t(num_vars_), "QSeries::add_term: wrong arity");
    if (!admissible(e) || is_zero(c)) return;
    Rat& slot = terms_[e];
    slot += c;
    if (is_zero(slot)) terms_.erase(e);
}

void QSeries::check_same_shape(const QSeries& o) const {
    if (num_vars_ != o.num_vars_ || trunc_ != o.trunc_)
        throw shape_error("QSeries: operands have different variable count or truncation");
}

void QSeries::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (!admissible(it->first))
            it = terms_.erase(it);
        else
            ++it;
    }
}

QSeries QSeries::operator+(const QSeries& o) const {
    check_same_shape(o);
    QSeries out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

QSeries QSeries::operator-(const QSeries& o) const {
    check_same_shape(o);
    QSeries out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

QSeries QSeries::operator*(const QSeries& o) const {
    check_same_shape(o);
    QSeries out(num_vars_, trunc_);
    out.per_var_cap_ = per_var_cap_;
    for (const auto& [ea, ca] : terms_) {
        uint64_t da = std::accumulate(ea.begin(), ea.end(), uint64_t(0));
        for (const auto& [eb, cb] : o.terms_) {
            uint64_t db = std::accumulate(eb.begin(), eb.end(), uint64_t(0));
            if (da + db > uint64_t(trunc_)) continue;
            Exponent e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

QSeries QSeries::operator*(const Rat& c) const {
    QSeries out(num_vars_, trunc_);
    out.per_var_cap_ = per_var_cap_;
    if (is_zero(c)) return out;
    for (const auto& [e, v] : terms_) out.terms_[e] = v * c;
    return out;
}

bool QSeries::operator==(const QSeries& o) const {
    return num_vars_ == o.num_vars_ && trunc_ == o.trunc_ && terms_ == o.terms_;
}

QSeries QSeries::inverse() const {
    Exponent zero(size_t(num_vars_), 0);
    Rat c0 = coeff(zero);
    if (is_zero(c0)) throw not_invertible_error("QSeries: zero constant term");
    // b_0 = 1/a_0, then order by order: b_E = -1/a_0 * sum_{0<F<=E} a_F b_{E-F}
    QSeries out(num_vars_, trunc_);
    out.per_var_cap_ = per_var_cap_;
    out.terms_[zero] = Rat(1) / c0;
    // group own terms by total degree for the triangular solve
    std::vector<std::pair<Exponent, Rat>> nonconst;
    for (const auto& [e, c] : terms_)
        if (e != zero) nonconst.emplace_back(e, c);

    // enumerate target exponents in increasing total degree
    std::vector<Exponent> targets;
    Exponent cur(size_t(num_vars_), 0);
    // recursive enumeration of all exponents with total degree in [1, trunc_]
    auto enumerate = [&](auto&& self, size_t pos, int remaining) -> void {
        if (pos == cur.size()) {
            targets.push_back(cur);
            return;
        }
        int cap = remaining;
        if (per_var_cap_ >= 0) cap = std::min(cap, per_var_cap_);
        for (int n = 0; n <= cap; ++n) {
            cur[pos] = uint32_t(n);
            self(self, pos + 1, remaining - n);
        }
        cur[pos] = 0;
    };
    enumerate(enumerate, 0, trunc_);
    std::sort(targets.begin(), targets.end(), [](const Exponent& a, const Exponent& b) {
        uint64_t da = std::accumulate(a.begin(), a.end(), uint64_t(0));
        uint64_t db = std::accumulate(b.begin(), b.end(), uint64_t(0));
        if (da != db) return da < db;
        return a < b;
    });

    for (const Exponent& e : targets) {
        if (e == zero) continue;
        Rat acc = 0;
        for (const auto& [f, af] : nonconst) {
            bool fits = true;
            Exponent rest(e.size());
            for (size_t i = 0; i < e.size(); ++i) {
                if (f[i] > e[i]) {
                    fits = false;
                    break;
                }
                rest[i] = e[i] - f[i];
            }
            if (!fits) continue;
            auto it = out.terms_.find(rest);
            if (it != out.terms_.end()) acc += af * it->second;
        }
        if (!is_zero(acc)) out.terms_[e] = -acc / c0;
    }
    return out;
}

QSeries QSeries::pow(unsigned e) const {
    QSeries acc = QSeries::one(num_vars_, trunc_);
    acc.per_var_cap_ = per_var_cap_;
    QSeries base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

QSeries qseries_inv(const QSeries& a) { return a.inverse(); }

USeries USeries::truncated(int new_trunc) const {
    USeries out(new_trunc);
    for (int i = 0; i <= std::min(new_trunc, truncation()); ++i) out[i] = coeffs_[size_t(i)];
    return out;
}

USeries USeries::operator+(const USeries& o) const {
    int n = std::min(truncation(), o.truncation());
    USeries out(n);
    for (int i = 0; i <= n; ++i) out[i] = coeffs_[size_t(i)] + o[i];
    return out;
}

USeries USeries::operator-(const USeries& o) const {
    int n = std::min(truncation(), o.truncation());
    USeries out(n);
    for (int i = 0; i <= n; ++i) out[i] = coeffs_[size_t(i)] - o[i];
    return out;
}

USeries USeries::operator*(const USeries& o) const {
    int n = std::min(truncation(), o.truncation());
    USeries out(n);
    for (int i = 0; i <= n; ++i) {
        if (voapf::is_zero(coeffs_[size_t(i)])) continue;
        for (int j = 0; i + j <= n && j <= o.truncation(); ++j) {
            if (voapf::is_zero(o[j])) continue;
            out[i + j] += coeffs_[size_t(i)] * o[j];
        }
    }
    return out;
}

USeries USeries::operator*(const Rat& c) const {
    USeries out(truncation());
    for (int i = 0; i <= truncation(); ++i) out[i] = coeffs_[size_t(i)] * c;
    return out;
}

USeries USeries::inverse() const {
    if (voapf::is_zero(coeffs_[0])) throw not_invertible_error("USeries: zero constant term");
    int n = truncation();
    USeries out(n);
    out[0] = Rat(1) / coeffs_[0];
    for (int k = 1; k <= n; ++k) {
        Rat acc = 0;
        for (int j = 1; j <= k; ++j) acc += coeffs_[size_t(j)] * out[k - j];
        out[k] = -acc / coeffs_[0];
    }
    return out;
}

USeries USeries::pow(unsigned e) const {
    USeries acc(truncation());
    acc[0] = 1;
    USeries base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool USeries::is_zero() const {
    for (const Rat& c : coeffs_)
        if (!voapf::is_zero(c)) return false;
    return true;
}

USeries USeries::scale_variable(const Rat& scale) const {
    USeries out(truncation());
    Rat p = 1;
    for (int i = 0; i <= truncation(); ++i) {
        out[i] = coeffs_[size_t(i)] * p;
        p *= scale;
    }
    return out;
}

QSeries USeries::to_qseries() const {
    QSeries out(1, truncation());
    for (int i = 0; i <= truncation(); ++i) out.set_coeff({uint32_t(i)}, coeffs_[size_t(i)]);
    return out;
}

USeries useries_compose(const USeries& outer, const USeries& inner) {
    if (!voapf::is_zero(inner[0]))
        throw composition_error("useries_compose: inner constant term must vanish");
    int n = std::min(outer.truncation(), inner.truncation());
    USeries out(n);
    out[0] = outer[0];
    USeries power(n);
    power[0] = 1;
    USeries inner_t = inner.truncated(n);
    for (int k = 1; k <= outer.truncation(); ++k) {
        power = power * inner_t;
        if (power.is_zero()) break; // inner has valuation >= 1, powers die past n
        for (int i = 0; i <= n; ++i) out[i] += outer[k] * power[i];
    }
    return out;
}

USeries lagrange_invert_mu(int trunc) {
    require(trunc >= 1, "lagrange_invert_mu: need N >= 1");
    USeries t(trunc);
    t[1] = 1;
    USeries mu(trunc); // start from 0
    for (int it = 0; it <= trunc + 1; ++it) {
        USeries one_plus(trunc);
        one_plus[0] = 1;
        USeries next = (t * (one_plus + mu) * (one_plus + mu)) * Rat(-1);
        if (next == mu) break;
        mu = next;
    }
    return mu;
}

USeries colored_partition_series(int colors, int trunc) {
    require(colors >= 0, "colored_partition_series: bad rank");
    USeries out(trunc);
    out[0] = 1;
    // multiply (1 - t^m)^(-1), colors times each, via the triangular recursion
    for (int c = 0; c < colors; ++c) {
        for (int m = 1; m <= trunc; ++m) {
            // out *= (1 - t^m)^(-1): out[k] += out[k - m]
            for (int k = m; k <= trunc; ++k) out[k] += out[k - m];
        }
    }
    return out;
}

} // namespace voapf
