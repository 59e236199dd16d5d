#include "voapf/schottky.hpp"

#include <sstream>

namespace voapf {

GQ GQ::operator/(const GQ& o) const {
    if (o.is_zero()) throw pole_error("division by zero Gaussian rational");
    Rat n = o.norm2();
    GQ conj{o.re, -o.im};
    GQ prod = *this * conj;
    return {prod.re / n, prod.im / n};
}

std::string GQ::to_string() const {
    std::ostringstream os;
    os << re.get_str();
    if (!voapf::is_zero(im)) os << (sgn(im) >= 0 ? "+" : "") << im.get_str() << "i";
    return os.str();
}

std::optional<GQ> sqrt_gaussian(const GQ& z) {
    if (z.is_zero()) return GQ{};
    if (z.is_real()) {
        Rat root;
        if (sgn(z.re) > 0 && sqrt_exact(z.re, root)) return GQ{root, 0};
        if (sgn(z.re) < 0 && sqrt_exact(-z.re, root)) return GQ{Rat(0), root};
        return std::nullopt;
    }
    // s = x + iy with x^2 - y^2 = re, 2xy = im; needs |z| and (re+|z|)/2 square
    Rat n2 = z.norm2(), n;
    if (!sqrt_exact(n2, n)) return std::nullopt;
    Rat x2 = (z.re + n) / 2, x;
    if (!sqrt_exact(x2, x) || is_zero(x)) return std::nullopt;
    Rat y = z.im / (2 * x);
    GQ s{x, y};
    if (s * s == z) return s;
    return std::nullopt;
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
    return MoebiusMap{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                      c * o.b + d * o.d};
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap{d, -b, -c, a}; }

std::optional<GQ> MoebiusMap::apply(const std::optional<GQ>& x) const {
    if (!x) { // point at infinity
        if (c.is_zero()) return std::nullopt;
        return a / c;
    }
    GQ den = c * *x + d;
    if (den.is_zero()) return std::nullopt;
    return (a * *x + b) / den;
}

bool MoebiusMap::normalize() {
    GQ dt = det();
    if (dt.is_zero()) throw degenerate_map_error("Moebius map is singular");
    std::optional<GQ> s = sqrt_gaussian(dt);
    if (!s) return false;
    a = a / *s;
    b = b / *s;
    c = c / *s;
    d = d / *s;
    return true;
}

bool MoebiusMap::is_identity_projective() const {
    return b.is_zero() && c.is_zero() && a == d;
}

MoebiusMap from_wzq(const GQ& w, const GQ& z, const GQ& q) {
    if (q.is_zero()) throw degenerate_map_error("from_wzq: q must be nonzero");
    // x -> (w x + (q - w z)) / (x - z)
    MoebiusMap m{w, q - w * z, GQ{Rat(1)}, -z};
    m.normalize(); // determinant 1 whenever -q is a square in Q(i)
    return m;
}

WZQ to_wzq(const GQ& W, const GQ& Z, const GQ& mu) {
    if (mu.is_zero()) throw degenerate_map_error("to_wzq: mu = 0 is degenerate");
    if (mu == GQ{Rat(1)}) throw parabolic_error("to_wzq: mu = 1 is parabolic");
    if (W == Z) throw domain_error("to_wzq: fixed points coincide");
    GQ one{Rat(1)};
    GQ den = one - mu;
    WZQ out;
    out.w = (W - mu * Z) / den;
    out.z = (Z - mu * W) / den;
    GQ diff = W - Z;
    out.q = -(mu * diff * diff) / (den * den);
    return out;
}

namespace {

// ball arithmetic over Q: center/radius with exact rational bookkeeping
struct Ball {
    Rat c, r;
    Ball() : c(0), r(0) {}
    explicit Ball(Rat center, Rat radius = Rat(0)) : c(std::move(center)), r(std::move(radius)) {}
};

Rat rat_abs(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }

Ball operator+(const Ball& x, const Ball& y) { return Ball(x.c + y.c, x.r + y.r); }
Ball operator-(const Ball& x, const Ball& y) { return Ball(x.c - y.c, x.r + y.r); }
Ball operator*(const Ball& x, const Ball& y) {
    return Ball(x.c * y.c, rat_abs(x.c) * y.r + rat_abs(y.c) * x.r + x.r * y.r);
}

Ball recip(const Ball& x) {
    Rat ac = rat_abs(x.c);
    require(ac > x.r, "ball reciprocal: interval contains zero");
    return Ball(Rat(1) / x.c, x.r / (ac * (ac - x.r)));
}

// rigorous sqrt ball of a non-negative rational: the bounds are verified by
// exact squaring, independent of how the estimate was produced
Ball sqrt_ball(const Rat& a, const Rat& tol) {
    require(sgn(a) >= 0, "sqrt_ball: negative input");
    if (is_zero(a)) return Ball(Rat(0));
    // generous working precision; the enclosure below is verified exactly,
    // so this only has to be small enough for the requested tolerance
    const int prec = 2048;
    mpf_class approx(0, prec);
    approx = mpf_class(a.get_num(), prec) / mpf_class(a.get_den(), prec);
    mpf_sqrt(approx.get_mpf_t(), approx.get_mpf_t());
    Rat center = Rat(mpq_class(approx));
    Rat radius = tol / 2;
    for (int grow = 0; grow < 64; ++grow) {
        Rat lo = center - radius, hi = center + radius;
        if (sgn(lo) >= 0 && lo * lo <= a && hi * hi >= a) return Ball(center, radius);
        radius *= 2;
    }
    throw invariant_error("sqrt_ball: could not verify enclosure");
}

struct BallC {
    Ball re, im;
};

BallC operator+(const BallC& x, const BallC& y) { return {x.re + y.re, x.im + y.im}; }
BallC operator-(const BallC& x, const BallC& y) { return {x.re - y.re, x.im - y.im}; }
BallC operator*(const BallC& x, const BallC& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
BallC recip(const BallC& x) {
    Ball n = x.re * x.re + x.im * x.im;
    Ball rn = recip(n);
    return {x.re * rn, (Ball(Rat(0)) - x.im) * rn};
}
BallC to_ball(const GQ& z) { return {Ball(z.re), Ball(z.im)}; }

// complex sqrt enclosure of an exact Gaussian rational
BallC sqrt_ballc(const GQ& z, const Rat& tol) {
    if (z.is_real()) {
        if (sgn(z.re) >= 0) return {sqrt_ball(z.re, tol), Ball(Rat(0))};
        return {Ball(Rat(0)), sqrt_ball(-z.re, tol)};
    }
    Ball n = sqrt_ball(z.norm2(), tol * tol);
    // x = sqrt((re + |z|)/2), y = im / (2x)
    Ball x2 = (n + Ball(z.re)) * Ball(Rat(1, 2));
    Rat x2lo = x2.c - x2.r;
    require(sgn(x2lo) > 0, "sqrt_ballc: cannot certify the real part");
    // bound sqrt of the interval [x2lo, x2hi]
    Ball xlo = sqrt_ball(x2lo, tol), xhi = sqrt_ball(x2.c + x2.r, tol);
    Rat lo = xlo.c - xlo.r, hi = xhi.c + xhi.r;
    Ball x((lo + hi) / 2, (hi - lo) / 2);
    Ball y = Ball(z.im) * recip(x * Ball(Rat(2)));
    return {x, y};
}

bool ball_lt(const Ball& x, const Rat& bound) { return x.c + x.r < bound; }
bool ball_gt(const Ball& x, const Rat& bound) { return x.c - x.r > bound; }

} // namespace

FixedPointData fixed_points_multiplier(const MoebiusMap& m) {
    GQ dt = m.det();
    if (dt.is_zero()) throw degenerate_map_error("fixed points: singular map");
    if (m.c.is_zero())
        throw domain_error("fixed points: a fixed point at infinity is not supported");

    // loxodromic iff trace^2/det is not a real number in [0, 4]
    GQ tr = m.a + m.d;
    GQ t = (tr * tr) / dt;
    if (t.is_real() && sgn(t.re) >= 0 && t.re <= 4)
        throw not_loxodromic_error("fixed points: map is elliptic or parabolic");

    // roots of c x^2 + (d - a) x - b
    GQ two_c = m.c + m.c;
    GQ diff = m.a - m.d;
    GQ disc = diff * diff + GQ{Rat(4)} * m.b * m.c;

    FixedPointData out;
    std::optional<GQ> s = sqrt_gaussian(disc);
    if (s) {
        GQ x1 = (diff + *s) / two_c;
        GQ x2 = (diff - *s) / two_c;
        auto mult = [&](const GQ& x) {
            GQ den = m.c * x + m.d;
            return dt / (den * den);
        };
        GQ m1 = mult(x1), m2 = mult(x2);
        bool first_attracting = m1.norm2() < 1;
        require(first_attracting != (m2.norm2() < 1),
                "fixed points: exactly one fixed point must attract");
        out.exact = true;
        out.attracting = first_attracting ? x1 : x2;
        out.repelling = first_attracting ? x2 : x1;
        out.multiplier = first_attracting ? m1 : m2;
        return out;
    }

    // irrational discriminant: certified enclosures
    out.exact = false;
    Rat tol(1, 1);
    for (int i = 0; i < 30; ++i) tol /= 1000000000; // 1e-270 working tolerance
    BallC sb = sqrt_ballc(disc, tol);
    BallC inv2c = recip(to_ball(two_c));
    BallC x1 = (to_ball(diff) + sb) * inv2c;
    BallC x2 = (to_ball(diff) - sb) * inv2c;
    auto mult = [&](const BallC& x) {
        BallC den = to_ball(m.c) * x + to_ball(m.d);
        return to_ball(dt) * recip(den * den);
    };
    BallC m1 = mult(x1), m2 = mult(x2);
    Ball n1 = m1.re * m1.re + m1.im * m1.im;
    Ball n2 = m2.re * m2.re + m2.im * m2.im;
    bool first_attracting;
    if (ball_lt(n1, 1) && ball_gt(n2, 1))
        first_attracting = true;
    else if (ball_lt(n2, 1) && ball_gt(n1, 1))
        first_attracting = false;
    else
        throw invariant_error("fixed points: enclosures too wide to pick the attractor");
    const BallC& att = first_attracting ? x1 : x2;
    const BallC& rep = first_attracting ? x2 : x1;
    const BallC& mu = first_attracting ? m1 : m2;
    out.att_re_lo = att.re.c - att.re.r;
    out.att_re_hi = att.re.c + att.re.r;
    out.att_im_lo = att.im.c - att.im.r;
    out.att_im_hi = att.im.c + att.im.r;
    out.rep_re_lo = rep.re.c - rep.re.r;
    out.rep_re_hi = rep.re.c + rep.re.r;
    out.rep_im_lo = rep.im.c - rep.im.r;
    out.rep_im_hi = rep.im.c + rep.im.r;
    out.mul_re_lo = mu.re.c - mu.re.r;
    out.mul_re_hi = mu.re.c + mu.re.r;
    out.mul_im_lo = mu.im.c - mu.im.r;
    out.mul_im_hi = mu.im.c + mu.im.r;
    return out;
}

URegionReport in_U_gr(const SchottkyGenerators& gens, const Rat& r) {
    if (sgn(r) <= 0) throw domain_error("in_U_gr: radius must be positive");
    URegionReport rep;
    Rat r2 = r * r, r4 = r2 * r2, four_r2 = 4 * r2;

    bool ok = true;
    std::vector<GQ> centers;
    for (const WZQ& h : gens.handles) {
        Rat qn = h.q.norm2();
        if (!(sgn(qn) > 0 && qn < r4)) ok = false;
        centers.push_back(h.w);
        centers.push_back(h.z);
    }
    for (size_t i = 0; i < centers.size() && ok; ++i)
        for (size_t j = i + 1; j < centers.size() && ok; ++j) {
            GQ d = centers[i] - centers[j];
            if (!(d.norm2() > four_r2)) ok = false;
        }
    rep.in_region = ok;

    bool ordered = true;
    for (size_t i = 0; i + 1 < centers.size(); ++i)
        if (!(centers[i].norm2() > centers[i + 1].norm2())) ordered = false;
    rep.plus_ordering = ordered;
    return rep;
}

bool plumbing_check(const WZQ& gen, const std::optional<GQ>& x, const std::optional<GQ>& y) {
    MoebiusMap g = from_wzq(gen.w, gen.z, gen.q);
    std::optional<GQ> gy = g.apply(y);
    bool glued = (gy && x && *gy == *x) || (!gy && !x);

    bool relation;
    if (!y) {
        // y at infinity glues to x = w; the product degenerates to that limit
        relation = x && *x == gen.w;
    } else if (!x) {
        relation = *y == gen.z;
    } else {
        relation = (*x - gen.w) * (*y - gen.z) == gen.q;
    }
    return glued == relation;
}

bool disks_disjoint(const SchottkyGenerators& gens) {
    // centers w_i, z_i with radius^2 = |q_i|; compare |c_a - c_b| with
    // r_a + r_b through verified enclosures of the square roots
    Rat tol(1, 1);
    for (int i = 0; i < 8; ++i) tol /= 1000000000;

    struct Disk {
        GQ center;
        Ball radius;
    };
    std::vector<Disk> disks;
    for (const WZQ& h : gens.handles) {
        Ball qabs = sqrt_ball(h.q.norm2(), tol); // |q|
        Ball rad = sqrt_ball(qabs.c, tol);       // sqrt|q| up to the center error
        rad.r += qabs.r; // crude but safe widening for the nested root
        disks.push_back({h.w, rad});
        disks.push_back({h.z, rad});
    }
    for (size_t i = 0; i < disks.size(); ++i)
        for (size_t j = i + 1; j < disks.size(); ++j) {
            Ball dist = sqrt_ball((disks[i].center - disks[j].center).norm2(), tol);
            Ball sum = disks[i].radius + disks[j].radius;
            if (!(dist.c - dist.r > sum.c + sum.r)) return false;
        }
    return true;
}

} // namespace voapf
