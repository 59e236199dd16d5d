#include "voapf/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "voapf/linalg.hpp"

namespace voapf {

long EvenLattice::inner(const Charge& a, const Charge& b) const {
    long acc = 0;
    for (size_t i = 0; i < rank(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < rank(); ++j) acc += a[i] * gram[i][j] * b[j];
    }
    return acc;
}

void EvenLattice::validate() const {
    size_t r = rank();
    for (size_t i = 0; i < r; ++i) {
        if (gram[i].size() != r) throw lattice_error("Gram matrix is not square");
        if (gram[i][i] % 2 != 0) throw lattice_error("Gram diagonal is not even");
        for (size_t j = 0; j < r; ++j)
            if (gram[i][j] != gram[j][i]) throw lattice_error("Gram matrix is not symmetric");
    }
    // positive definiteness via leading principal minors
    MatQ m(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) m.at(i, j) = gram[i][j];
    for (size_t k = 1; k <= r; ++k) {
        MatQ lead(k, k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) lead.at(i, j) = m.at(i, j);
        if (sgn(lead.det()) <= 0) throw lattice_error("Gram matrix is not positive definite");
    }
}

Cocycle::Cocycle(const EvenLattice& L) {
    size_t r = L.rank();
    b_.assign(r, std::vector<long>(r, 0));
    for (size_t i = 0; i < r; ++i) {
        b_[i][i] = L.gram[i][i] / 2;
        for (size_t j = 0; j < i; ++j) b_[i][j] = L.gram[i][j];
    }
}

int Cocycle::sign(const Charge& a, const Charge& b) const {
    long acc = 0;
    for (size_t i = 0; i < b_.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b_.size(); ++j) acc += a[i] * b_[i][j] * b[j];
    }
    return (acc % 2 == 0) ? 1 : -1;
}

namespace {

// G = U^T D U with U unit upper triangular; exact rationals
void rational_cholesky(const EvenLattice& L, std::vector<Rat>& d,
                       std::vector<std::vector<Rat>>& u) {
    size_t r = L.rank();
    std::vector<std::vector<Rat>> a(r, std::vector<Rat>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) a[i][j] = L.gram[i][j];
    d.assign(r, Rat(0));
    u.assign(r, std::vector<Rat>(r, Rat(0)));
    for (size_t i = 0; i < r; ++i) {
        d[i] = a[i][i];
        if (sgn(d[i]) <= 0) throw lattice_error("Gram matrix is not positive definite");
        u[i][i] = 1;
        for (size_t j = i + 1; j < r; ++j) u[i][j] = a[i][j] / d[i];
        for (size_t k = i + 1; k < r; ++k)
            for (size_t l = k; l < r; ++l) {
                a[k][l] -= d[i] * u[i][k] * u[i][l];
                a[l][k] = a[k][l];
            }
    }
}

struct EnumContext {
    const EvenLattice* L;
    long maxnorm;
    bool store;
    EnumResult* out;
    // exact path
    std::vector<Rat> d;
    std::vector<std::vector<Rat>> u;
    // accelerated path
    std::vector<long double> df;
    std::vector<std::vector<long double>> uf;
    std::vector<long> x;
    // incremental integer norm bookkeeping: row[i] = sum_{j>i} G[i][j] x_j
    std::vector<long> grow;
    // an ancestor level already stands in for the +- sign pair
    bool doubling = false;
};

// record a found vector; `doubled` means +-x are both represented by x
void emit_vector(EnumContext& c, long n, bool doubled) {
    require(n >= 0 && n <= c.maxnorm, "enumerate_by_norm: pruning admitted a long vector");
    c.out->counts[n] += doubled ? 2 : 1;
    if (c.store) {
        c.out->vectors[n].push_back(Charge(c.x.begin(), c.x.end()));
        if (doubled) {
            Charge neg(c.x.size());
            for (size_t k = 0; k < c.x.size(); ++k) neg[k] = -c.x[k];
            c.out->vectors[n].push_back(std::move(neg));
        }
    }
}

// Exact recursion, level i from the bottom (i = r-1 .. 0). The admissible
// x_i form one interval around the vertex -offset, so an outward scan in
// both directions that stops at the first failure covers all of it. While
// every level above chose zero the offset is exactly zero, so only x_i >= 0
// is scanned there and nonzero choices stand in for the +- pair.
void enum_exact(EnumContext& c, size_t i, const Rat& budget, std::vector<Rat>& offsets,
                bool canonical) {
    const size_t r = c.L->rank();
    const Rat off = offsets[i]; // sum_{j>i} U[i][j] x_j
    long x0 = canonical ? 0 : std::lround(-off.get_d());
    for (int dir = 0; dir < 2; ++dir) {
        if (canonical && dir == 1) break;
        long x = dir == 0 ? x0 : x0 - 1;
        long step = dir == 0 ? 1 : -1;
        while (true) {
            Rat t = Rat(x) + off;
            Rat used = c.d[i] * t * t;
            if (used > budget) break;
            c.x[i] = x;
            bool child_canonical = canonical && x == 0;
            bool doubled = canonical && x != 0;
            if (i == 0) {
                long n = 0; // exact integer norm
                for (size_t a = 0; a < r; ++a) {
                    if (c.x[a] == 0) continue;
                    n += c.x[a] * c.x[a] * c.L->gram[a][a];
                    for (size_t b = a + 1; b < r; ++b)
                        n += 2 * c.x[a] * c.L->gram[a][b] * c.x[b];
                }
                emit_vector(c, n, doubled || c.doubling);
            } else {
                Rat sub = budget - used;
                for (size_t k = 0; k < i; ++k) offsets[k] += c.u[k][i] * Rat(x);
                bool saved = c.doubling;
                if (doubled) c.doubling = true;
                enum_exact(c, i - 1, sub, offsets, child_canonical);
                c.doubling = saved;
                for (size_t k = 0; k < i; ++k) offsets[k] -= c.u[k][i] * Rat(x);
            }
            x += step;
        }
    }
}

// accelerated recursion: extended-precision pruning with slack, exact
// integer norm bookkeeping along the tree
void enum_fast(EnumContext& c, size_t i, long double budget,
               std::vector<long double>& offsets, long partial_norm, bool canonical) {
    static const long double slack = 1e-9L;
    const long double off = offsets[i];
    long x0 = canonical ? 0 : llroundl(-off);
    for (int dir = 0; dir < 2; ++dir) {
        if (canonical && dir == 1) break;
        long x = dir == 0 ? x0 : x0 - 1;
        long step = dir == 0 ? 1 : -1;
        while (true) {
            long double t = (long double)x + off;
            long double used = c.df[i] * t * t;
            if (used > budget + slack) break;
            c.x[i] = x;
            bool child_canonical = canonical && x == 0;
            bool doubled = canonical && x != 0;
            // exact incremental norm: x_i^2 G_ii + 2 x_i sum_{j>i} G_ij x_j
            long contrib = x * x * c.L->gram[i][i] + 2 * x * c.grow[i];
            long pn = partial_norm + contrib;
            if (i == 0) {
                if (pn >= 0 && pn <= c.maxnorm) emit_vector(c, pn, doubled || c.doubling);
            } else {
                long double sub = budget - used;
                for (size_t k = 0; k < i; ++k) offsets[k] += c.uf[k][i] * (long double)x;
                for (size_t k = 0; k < i; ++k) c.grow[k] += c.L->gram[k][i] * x;
                bool saved = c.doubling;
                if (doubled) c.doubling = true;
                enum_fast(c, i - 1, sub, offsets, pn, child_canonical);
                c.doubling = saved;
                for (size_t k = 0; k < i; ++k) offsets[k] -= c.uf[k][i] * (long double)x;
                for (size_t k = 0; k < i; ++k) c.grow[k] -= c.L->gram[k][i] * x;
            }
            x += step;
        }
    }
}

} // namespace

EnumResult enumerate_by_norm(const EvenLattice& L, long maxnorm, const EnumOptions& opts) {
    if (maxnorm < 0) throw lattice_error("enumerate_by_norm: negative norm bound");
    EnumResult out;
    if (L.rank() == 0) {
        out.counts[0] = 1;
        if (opts.store_vectors) out.vectors[0].push_back(Charge());
        return out;
    }
    L.validate();

    EnumContext c;
    c.L = &L;
    c.maxnorm = maxnorm;
    c.store = opts.store_vectors;
    c.out = &out;
    c.x.assign(L.rank(), 0);
    rational_cholesky(L, c.d, c.u);
    size_t r = L.rank();
    if (opts.exact_prune) {
        std::vector<Rat> offsets(r, Rat(0));
        enum_exact(c, r - 1, Rat(maxnorm), offsets, true);
    } else {
        c.df.resize(r);
        c.uf.assign(r, std::vector<long double>(r, 0));
        for (size_t i = 0; i < r; ++i) {
            c.df[i] = (long double)c.d[i].get_d();
            for (size_t j = 0; j < r; ++j) c.uf[i][j] = (long double)c.u[i][j].get_d();
        }
        c.grow.assign(r, 0);
        std::vector<long double> offsets(r, 0.0L);
        enum_fast(c, r - 1, (long double)maxnorm, offsets, 0, true);
    }
    return out;
}

USeries theta_genus1(const EvenLattice& L, int trunc) {
    require(trunc >= 0, "theta_genus1: bad truncation");
    USeries out(trunc);
    if (L.rank() == 0) {
        out[0] = 1;
        return out;
    }
    EnumOptions opts;
    opts.store_vectors = false;
    opts.exact_prune = L.rank() <= 8;
    EnumResult res = enumerate_by_norm(L, 2L * trunc, opts);
    for (const auto& [norm, count] : res.counts) {
        require(norm % 2 == 0, "theta_genus1: odd norm on an even lattice");
        if (norm / 2 <= trunc) out[int(norm / 2)] = Rat(count);
    }
    return out;
}

std::map<std::array<long, 3>, Int> theta_genus2(const EvenLattice& L, long maxT) {
    require(maxT >= 0, "theta_genus2: bad bound");
    std::map<std::array<long, 3>, Int> out;
    if (L.rank() == 0) {
        out[{0, 0, 0}] = 1;
        return out;
    }
    EnumOptions opts;
    opts.exact_prune = false;
    EnumResult res = enumerate_by_norm(L, 2 * maxT, opts);

    // keep one representative per +- pair: first nonzero coordinate positive
    const size_t r = L.rank();
    std::vector<int32_t> coords; // canonical representatives, flattened
    std::vector<long> norms;     // per representative
    std::vector<int> mult;       // 1 for the zero vector, 2 otherwise
    for (const auto& [norm, list] : res.vectors) {
        for (const Charge& v : list) {
            int sign = 0;
            for (long c : v)
                if (c != 0) {
                    sign = c > 0 ? 1 : -1;
                    break;
                }
            if (sign < 0) continue;
            for (long c : v) {
                require(c >= INT32_MIN && c <= INT32_MAX, "theta_genus2: coordinate overflow");
                coords.push_back(int32_t(c));
            }
            norms.push_back(norm);
            mult.push_back(sign == 0 ? 1 : 2);
        }
    }
    size_t n = norms.size();
    std::vector<int32_t> gv(n * r, 0);
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < r; ++i) {
            long acc = 0;
            for (size_t j = 0; j < r; ++j) acc += L.gram[i][j] * coords[k * r + j];
            gv[k * r + i] = int32_t(acc);
        }

    for (size_t a = 0; a < n; ++a) {
        const int32_t* va = &coords[a * r];
        for (size_t b = a; b < n; ++b) {
            const int32_t* gb = &gv[b * r];
            long ip = 0;
            for (size_t i = 0; i < r; ++i) ip += long(va[i]) * gb[i];
            long na = norms[a] / 2, nb = norms[b] / 2;
            long m = long(mult[a]) * mult[b]; // sign combinations represented
            if (ip == 0) {
                out[{na, nb, 0}] += m;
                if (b != a) out[{nb, na, 0}] += m;
            } else {
                out[{na, nb, ip}] += m / 2;
                out[{na, nb, -ip}] += m / 2;
                if (b != a) {
                    out[{nb, na, ip}] += m / 2;
                    out[{nb, na, -ip}] += m / 2;
                }
            }
        }
    }
    return out;
}

Int lattice_voa_graded_dim(const EvenLattice& L, int n) {
    require(n >= 0, "lattice_voa_graded_dim: bad weight");
    USeries theta = theta_genus1(L, n);
    USeries parts = colored_partition_series(int(L.rank()), n);
    Int acc = 0;
    for (int m = 0; m <= n; ++m) {
        Rat t = theta[m] * parts[n - m];
        require(t.get_den() == 1, "lattice_voa_graded_dim: non-integer");
        acc += t.get_num();
    }
    return acc;
}

EvenLattice trivial_lattice() { return EvenLattice{"trivial", {}}; }

EvenLattice a1_lattice() { return EvenLattice{"A1", {{2}}}; }

EvenLattice e8_lattice() {
    // simply laced Gram from the E8 diagram: chain 1-3-4-5-6-7-8, node 2 on 4
    IntMat g(8, std::vector<long>(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2;
    auto link = [&](int a, int b) { g[a][b] = g[b][a] = -1; };
    link(0, 2);
    link(2, 3);
    link(3, 4);
    link(4, 5);
    link(5, 6);
    link(6, 7);
    link(1, 3);
    return EvenLattice{"E8", g};
}

std::vector<std::vector<Int>> hnf_row_basis(std::vector<std::vector<Int>> gens) {
    require(!gens.empty(), "hnf_row_basis: no generators");
    size_t cols = gens[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < gens.size(); ++col) {
        // gcd-reduce all rows below 'row' in this column
        while (true) {
            size_t piv = gens.size();
            for (size_t i = row; i < gens.size(); ++i) {
                if (gens[i][col] == 0) continue;
                if (piv == gens.size() || abs(gens[i][col]) < abs(gens[piv][col])) piv = i;
            }
            if (piv == gens.size()) break; // column is zero below
            std::swap(gens[row], gens[piv]);
            bool clean = true;
            for (size_t i = row + 1; i < gens.size(); ++i) {
                if (gens[i][col] == 0) continue;
                Int q = gens[i][col] / gens[row][col]; // truncated division is fine here
                for (size_t j = 0; j < cols; ++j) gens[i][j] -= q * gens[row][j];
                if (gens[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (gens[row][col] != 0) {
            if (sgn(gens[row][col]) < 0)
                for (size_t j = 0; j < cols; ++j) gens[row][j] = -gens[row][j];
            ++row;
        }
    }
    gens.resize(row);
    return gens;
}

std::vector<std::array<int, 24>> golay_generators() {
    // cyclic [23,12] code with generator polynomial
    // x^11 + x^9 + x^7 + x^6 + x^5 + x + 1, extended by a parity bit
    static const int gpoly[12] = {1, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1}; // degree 0..11
    std::vector<std::array<int, 24>> rows;
    for (int shift = 0; shift < 12; ++shift) {
        std::array<int, 24> row{};
        int weight = 0;
        for (int d = 0; d <= 11; ++d) {
            if (gpoly[d]) {
                row[size_t(shift + d)] = 1;
                ++weight;
            }
        }
        row[23] = weight % 2; // overall parity extension
        rows.push_back(row);
    }
    return rows;
}

namespace {

EvenLattice lattice_from_scaled_rows(const std::string& name,
                                     const std::vector<std::vector<Int>>& gens,
                                     long scale2) {
    // rows are coordinates scaled so that true inner product = dot / scale2
    auto basis_rows = hnf_row_basis(gens);
    size_t r = basis_rows.size();
    IntMat g(r, std::vector<long>(r, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            Int dot = 0;
            for (size_t k = 0; k < basis_rows[i].size(); ++k)
                dot += basis_rows[i][k] * basis_rows[j][k];
            require(dot % scale2 == 0, "lattice construction: non-integral Gram");
            g[i][j] = long(Int(dot / scale2).get_si());
        }
    EvenLattice L{name, g};
    L.validate();
    return L;
}

} // namespace

EvenLattice d16plus_lattice() {
    // D16 root basis plus the all-halves glue vector; coordinates scaled by 2
    std::vector<std::vector<Int>> gens;
    for (int i = 0; i < 15; ++i) {
        std::vector<Int> v(16, 0);
        v[size_t(i)] = 2;
        v[size_t(i) + 1] = -2;
        gens.push_back(v);
    }
    {
        std::vector<Int> v(16, 0);
        v[14] = 2;
        v[15] = 2;
        gens.push_back(v);
    }
    gens.emplace_back(16, Int(1)); // (1/2, ..., 1/2) scaled by 2
    return lattice_from_scaled_rows("D16plus", gens, 4);
}

EvenLattice leech_lattice() {
    // standard construction over the extended Golay code; coordinates scaled
    // by sqrt(8), i.e. true inner product = dot / 8
    std::vector<std::vector<Int>> gens;
    for (const auto& c : golay_generators()) {
        std::vector<Int> v(24);
        for (size_t i = 0; i < 24; ++i) v[i] = 2 * c[i];
        gens.push_back(v);
    }
    for (int i = 1; i < 24; ++i) {
        std::vector<Int> v(24, 0);
        v[0] = 4;
        v[size_t(i)] = 4;
        gens.push_back(v);
    }
    {
        std::vector<Int> v(24, 0);
        v[0] = 8;
        gens.push_back(v);
    }
    {
        std::vector<Int> v(24, 1);
        v[0] = -3;
        gens.push_back(v);
    }
    return lattice_from_scaled_rows("Leech", gens, 8);
}

EvenLattice builtin_lattice(const std::string& name) {
    if (name == "A1") return a1_lattice();
    if (name == "E8") return e8_lattice();
    if (name == "D16plus" || name == "D16+") return d16plus_lattice();
    if (name == "Leech") return leech_lattice();
    if (name == "trivial") return trivial_lattice();
    throw domain_error("unknown builtin lattice: " + name);
}

} // namespace voapf
