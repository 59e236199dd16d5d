#include "voapf/correlators.hpp"

#include <algorithm>
#include <functional>

namespace voapf {

namespace {

Rat abs_rat(const Rat& r) { return sgn(r) < 0 ? Rat(-r) : r; }

// coefficient of h_m z^{-m-n} in d^(n-1) h(z) / (n-1)!
Rat leg_coeff(long m, long n) {
    Rat c = binomial(Rat(m + n - 1), unsigned(n - 1));
    if ((n - 1) % 2 != 0) c = -c;
    return c;
}

} // namespace

PointConfig PointConfig::of(std::vector<Rat> pts) {
    if (pts.size() % 2 != 0) throw domain_error("PointConfig: need an even number of points");
    for (size_t i = 0; i < pts.size(); ++i) {
        if (is_zero(pts[i])) throw domain_error("PointConfig: points must be nonzero");
        if (i + 1 < pts.size() && !(abs_rat(pts[i]) > abs_rat(pts[i + 1])))
            throw domain_error("PointConfig: moduli must decrease strictly");
    }
    PointConfig c;
    c.pts_ = std::move(pts);
    return c;
}

namespace {

struct Leg {
    size_t ins;  // insertion index
    int color;
    long d;      // derivative order = mode level - 1
};

struct WickContext {
    const FlatModel* M;
    std::vector<Charge> charges;        // full-rank charge per insertion
    std::vector<std::vector<long>> gch; // G * charge per insertion
    std::vector<Rat> x;
    std::vector<Leg> legs;
    std::vector<bool> used;
    bool any_charge = false;
};

Rat wick_pairs(WickContext& c, size_t from) {
    size_t first = from;
    while (first < c.legs.size() && c.used[first]) ++first;
    if (first == c.legs.size()) return 1;
    c.used[first] = true;
    const Leg& l = c.legs[first];
    Rat acc = 0;

    if (c.any_charge) {
        // contraction against the other insertions' charges
        Rat q = 0;
        for (size_t j = 0; j < c.x.size(); ++j) {
            if (j == l.ins) continue;
            long pair = c.gch[j][size_t(l.color)];
            if (pair == 0) continue;
            q += Rat(pair) * pow_rat(c.x[l.ins] - c.x[j], -(l.d + 1));
        }
        if (l.d % 2 != 0) q = -q;
        if (!is_zero(q)) acc += q * wick_pairs(c, first + 1);
    }

    for (size_t other = first + 1; other < c.legs.size(); ++other) {
        if (c.used[other]) continue;
        const Leg& l2 = c.legs[other];
        if (l2.ins == l.ins) continue;
        long g = c.M->gram()[size_t(l.color)][size_t(l2.color)];
        if (g == 0) continue;
        // (1/a!)(1/b!) d_x^a d_y^b (x-y)^(-2) = (-1)^a (a+b+1)!/(a! b!) (x-y)^(-a-b-2)
        // with a the derivative order at the first point of the pair
        Rat kernel(factorial(unsigned(l.d + l2.d + 1)),
                   factorial(unsigned(l.d)) * factorial(unsigned(l2.d)));
        kernel.canonicalize();
        if (l.d % 2 != 0) kernel = -kernel;
        kernel *= g;
        kernel *= pow_rat(c.x[l.ins] - c.x[l2.ins], -(l.d + l2.d + 2));
        c.used[other] = true;
        acc += kernel * wick_pairs(c, first + 1);
        c.used[other] = false;
    }

    c.used[first] = false;
    return acc;
}

Rat wick_mono(const FlatModel& M, const std::vector<VoaState>& states,
              const std::vector<Rat>& x) {
    size_t n = states.size();
    WickContext c;
    c.M = &M;
    c.x = x;
    c.charges.resize(n);
    c.gch.assign(n, std::vector<long>(M.rank(), 0));
    Charge total(M.rank(), 0);
    for (size_t i = 0; i < n; ++i) {
        c.charges[i] = states[i].charge.size() == M.rank() ? states[i].charge
                                                           : Charge(M.rank(), 0);
        for (size_t a = 0; a < M.rank(); ++a) total[a] += c.charges[i][a];
    }
    for (long t : total)
        if (t != 0) return 0; // charge conservation
    for (size_t i = 0; i < n; ++i) {
        for (size_t a = 0; a < M.rank(); ++a) {
            long s = 0;
            for (size_t b = 0; b < M.rank(); ++b) s += M.gram()[a][b] * c.charges[i][b];
            c.gch[i][a] = s;
            if (s != 0) c.any_charge = true;
        }
    }

    Rat prefactor = 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            long ip = 0;
            for (size_t a = 0; a < M.rank(); ++a) ip += c.charges[i][a] * c.gch[j][a];
            if (ip != 0) prefactor *= pow_rat(x[i] - x[j], ip);
            prefactor *= M.cocycle_sign(c.charges[i], c.charges[j]);
        }

    for (size_t i = 0; i < n; ++i)
        for (const FockMode& m : states[i].fock.modes)
            c.legs.push_back(Leg{i, m.color, m.level - 1});
    c.used.assign(c.legs.size(), false);

    return prefactor * wick_pairs(c, 0);
}

} // namespace

Rat wick_correlator(const FlatModel& M, const std::vector<Insertion>& insertions) {
    for (size_t i = 0; i < insertions.size(); ++i)
        for (size_t j = i + 1; j < insertions.size(); ++j)
            if (insertions[i].point == insertions[j].point)
                throw pole_error("wick_correlator: coincident insertion points");

    std::vector<Rat> x;
    for (const Insertion& ins : insertions) x.push_back(ins.point);

    // multilinear expansion over the monomials of every insertion
    Rat acc = 0;
    std::vector<VoaState> states(insertions.size());
    Rat coeff = 1;
    std::function<void(size_t, Rat)> expand = [&](size_t i, Rat cf) {
        if (i == insertions.size()) {
            acc += cf * wick_mono(M, states, x);
            return;
        }
        for (const auto& [s, c] : insertions[i].state.terms()) {
            states[i] = s;
            expand(i + 1, cf * c);
        }
    };
    expand(0, Rat(1));
    return acc;
}

// ---- mode-summation oracle ----

namespace {

struct SeriesSum {
    Rat value;
    bool certified = true;
    bool terminated = true;
};

// sum_{m >= mstart} f(m) rho^m where f is polynomial in m of degree <= deg
// beyond mstart. Explicit terms to `cutoff`, then the closed tail from the
// Newton forward differences. |rho| < 1 required.
SeriesSum polynomial_geometric_sum(const std::function<Rat(long)>& f, const Rat& rho,
                                   long mstart, long deg, long cutoff) {
    SeriesSum out;
    out.value = 0;
    if (abs_rat(rho) >= 1)
        throw domain_error("mode sum: ratio must have modulus below one");
    long m0 = std::max(mstart, cutoff + 1);
    Rat rp = pow_rat(rho, mstart);
    for (long m = mstart; m < m0; ++m) {
        out.value += f(m) * rp;
        rp *= rho;
    }
    // difference table at m0
    std::vector<Rat> vals;
    bool all_zero_window = true;
    for (long t = 0; t <= deg + 2; ++t) {
        vals.push_back(f(m0 + t));
        if (!is_zero(vals.back())) all_zero_window = false;
    }
    if (all_zero_window) {
        // series already ended within the explicit range
        return out;
    }
    out.terminated = false;
    std::vector<std::vector<Rat>> diff{vals};
    for (long s = 1; s <= deg + 2; ++s) {
        std::vector<Rat> next;
        for (size_t t = 0; t + 1 < diff.back().size(); ++t)
            next.push_back(diff.back()[t + 1] - diff.back()[t]);
        diff.push_back(next);
    }
    // certify polynomial degree
    for (const Rat& v : diff[size_t(deg + 1)])
        if (!is_zero(v)) {
            out.certified = false;
            break;
        }
    Rat tail = 0;
    Rat one_minus = Rat(1) - rho;
    Rat rho_s = 1;
    Rat inv_pow = Rat(1) / one_minus;
    for (long s = 0; s <= deg; ++s) {
        tail += diff[size_t(s)][0] * rho_s * inv_pow;
        rho_s *= rho;
        inv_pow /= one_minus;
    }
    out.value += pow_rat(rho, m0) * tail;
    return out;
}

struct OracleContext {
    const FlatModel* M;
    std::vector<Charge> charges;
    std::vector<std::vector<long>> gch;
    std::vector<Rat> x;
    std::vector<Leg> legs;
    std::vector<bool> used;
    bool any_charge = false;
    long cutoff;
    bool certified = true;
    bool terminated = true;
};

// mode series of a leg pair: annihilation modes of the earlier insertion
// against creation modes of the later one, [h_m, h_{-m}] = m G
Rat oracle_pair_kernel(OracleContext& c, const Leg& a, const Leg& b) {
    const Leg& hi = abs_rat(c.x[a.ins]) > abs_rat(c.x[b.ins]) ? a : b;
    const Leg& lo = (&hi == &a) ? b : a;
    long g = c.M->gram()[size_t(a.color)][size_t(b.color)];
    Rat rho = c.x[lo.ins] / c.x[hi.ins];
    auto f = [&](long m) -> Rat {
        return leg_coeff(m, hi.d + 1) * leg_coeff(-m, lo.d + 1) * Rat(m) * Rat(g);
    };
    SeriesSum s = polynomial_geometric_sum(f, rho, 1, hi.d + lo.d + 1, c.cutoff);
    c.certified = c.certified && s.certified;
    c.terminated = c.terminated && s.terminated;
    return s.value * pow_rat(c.x[hi.ins], -(hi.d + 1)) * pow_rat(c.x[lo.ins], -(lo.d + 1));
}

// mode series of a leg against the charge line of another insertion
Rat oracle_charge_kernel(OracleContext& c, const Leg& l) {
    Rat acc = 0;
    for (size_t j = 0; j < c.x.size(); ++j) {
        if (j == l.ins) continue;
        long pairing = c.gch[j][size_t(l.color)];
        if (pairing == 0) continue;
        bool right = abs_rat(c.x[l.ins]) > abs_rat(c.x[j]);
        if (right) {
            Rat rho = c.x[j] / c.x[l.ins];
            auto f = [&](long m) -> Rat { return leg_coeff(m, l.d + 1) * Rat(pairing); };
            SeriesSum s = polynomial_geometric_sum(f, rho, 0, l.d, c.cutoff);
            c.certified = c.certified && s.certified;
            c.terminated = c.terminated && s.terminated;
            acc += s.value * pow_rat(c.x[l.ins], -(l.d + 1));
        } else {
            Rat rho = c.x[l.ins] / c.x[j];
            auto f = [&](long m) -> Rat { return -leg_coeff(-m, l.d + 1) * Rat(pairing); };
            SeriesSum s = polynomial_geometric_sum(f, rho, 1, l.d, c.cutoff);
            c.certified = c.certified && s.certified;
            c.terminated = c.terminated && s.terminated;
            acc += s.value * pow_rat(c.x[l.ins], -(l.d + 1));
        }
    }
    return acc;
}

Rat oracle_legs(OracleContext& c, size_t from) {
    size_t first = from;
    while (first < c.legs.size() && c.used[first]) ++first;
    if (first == c.legs.size()) return 1;
    c.used[first] = true;
    const Leg& l = c.legs[first];
    Rat acc = 0;
    if (c.any_charge) {
        Rat q = oracle_charge_kernel(c, l);
        if (!is_zero(q)) acc += q * oracle_legs(c, first + 1);
    }
    for (size_t other = first + 1; other < c.legs.size(); ++other) {
        if (c.used[other] || c.legs[other].ins == l.ins) continue;
        if (c.M->gram()[size_t(l.color)][size_t(c.legs[other].color)] == 0) continue;
        Rat kernel = oracle_pair_kernel(c, l, c.legs[other]);
        c.used[other] = true;
        acc += kernel * oracle_legs(c, first + 1);
        c.used[other] = false;
    }
    c.used[first] = false;
    return acc;
}

// coefficient of rho^m in exp(s sum_p rho^p / p) = (1 - rho)^(-s) by
// explicit partition sums
Rat charge_line_coefficient(long s, long m) {
    // recursion over smallest part: memoless, m stays small
    std::function<Rat(long, long)> rec = [&](long left, long minp) -> Rat {
        if (left == 0) return 1;
        Rat acc = 0;
        for (long p = minp; p <= left; ++p) {
            // first part p used e >= 1 times
            Rat factor = 1;
            for (long e = 1; e * p <= left; ++e) {
                Rat sp(s, p);
                sp.canonicalize();
                factor *= sp;
                factor /= e;
                acc += factor * rec(left - e * p, p + 1);
            }
        }
        return acc;
    };
    return rec(m, 1);
}

} // namespace

ModeOracleResult mode_oracle(const FlatModel& M, const std::vector<Insertion>& insertions,
                             long cutoff) {
    for (size_t i = 0; i + 1 < insertions.size(); ++i)
        if (!(abs_rat(insertions[i].point) > abs_rat(insertions[i + 1].point)))
            throw domain_error("mode_oracle: points must decrease strictly in modulus");

    ModeOracleResult out;
    out.value = 0;
    out.certified = true;
    out.terminated = true;

    std::vector<Rat> x;
    for (const Insertion& ins : insertions) x.push_back(ins.point);

    std::vector<VoaState> states(insertions.size());
    std::function<void(size_t, Rat)> expand = [&](size_t i, Rat cf) {
        if (i == insertions.size()) {
            OracleContext c;
            c.M = &M;
            c.x = x;
            c.cutoff = cutoff;
            size_t n = states.size();
            c.charges.resize(n);
            c.gch.assign(n, std::vector<long>(M.rank(), 0));
            Charge total(M.rank(), 0);
            for (size_t a = 0; a < n; ++a) {
                c.charges[a] = states[a].charge.size() == M.rank() ? states[a].charge
                                                                   : Charge(M.rank(), 0);
                for (size_t t = 0; t < M.rank(); ++t) total[t] += c.charges[a][t];
            }
            for (long t : total)
                if (t != 0) return; // charge conservation
            for (size_t a = 0; a < n; ++a)
                for (size_t s = 0; s < M.rank(); ++s) {
                    long v = 0;
                    for (size_t b = 0; b < M.rank(); ++b)
                        v += M.gram()[s][b] * c.charges[a][b];
                    c.gch[a][s] = v;
                    if (v != 0) c.any_charge = true;
                }

            // charge-sector prefactor from the zero modes, the ordered
            // sector shifts, and the exponential cross terms
            Rat prefactor = 1;
            for (size_t i1 = 0; i1 < n; ++i1)
                for (size_t j = i1 + 1; j < n; ++j) {
                    prefactor *= M.cocycle_sign(c.charges[i1], c.charges[j]);
                    long k = 0;
                    for (size_t t = 0; t < M.rank(); ++t) k += c.charges[i1][t] * c.gch[j][t];
                    if (k == 0) continue;
                    Rat rho = x[j] / x[i1];
                    // the exponential cross terms sum to (1 - rho)^k
                    auto f = [&](long m) -> Rat { return charge_line_coefficient(-k, m); };
                    long deg = k >= 0 ? 0 : (-k - 1);
                    SeriesSum s = polynomial_geometric_sum(f, rho, 0, deg, cutoff);
                    out.certified = out.certified && s.certified;
                    out.terminated = out.terminated && s.terminated;
                    prefactor *= s.value * pow_rat(x[i1], k);
                }

            for (size_t a = 0; a < n; ++a)
                for (const FockMode& m : states[a].fock.modes)
                    c.legs.push_back(Leg{a, m.color, m.level - 1});
            c.used.assign(c.legs.size(), false);

            Rat v = oracle_legs(c, 0);
            out.certified = out.certified && c.certified;
            out.terminated = out.terminated && c.terminated;
            out.value += cf * prefactor * v;
            return;
        }
        for (const auto& [s, coeff] : insertions[i].state.terms()) {
            states[i] = s;
            expand(i + 1, cf * coeff);
        }
    };
    expand(0, Rat(1));
    return out;
}

TwoPointCheck two_point_check(const FlatModel& M, const GradedVector& u, const GradedVector& v,
                              long k, const Rat& w, const Rat& z) {
    if (!virasoro(M, 1, u).is_zero() || !virasoro(M, 1, v).is_zero())
        throw domain_error("two_point_check: states must be quasi-primary");
    TwoPointCheck out;
    out.correlator = wick_correlator(M, {{u, w}, {v, z}});
    out.predicted = bilinear(M, u, v) * pow_rat(w - z, -2 * k);
    if (k % 2 != 0) out.predicted = -out.predicted;
    out.match = out.correlator == out.predicted;
    return out;
}

} // namespace voapf
