#include "voapf/mode_engine.hpp"

#include <algorithm>

namespace voapf {

namespace {

// coefficient of h_m z^{-m-n} in the leg field d^(n-1) h(z) / (n-1)!
Rat leg_coeff(long m, long n) {
    Rat c = binomial(Rat(m + n - 1), unsigned(n - 1));
    if ((n - 1) % 2 != 0) c = -c;
    return c;
}

struct ModeWork {
    const FlatModel* M;
    long target_weight;            // weight of the output states
    Charge out_charge;             // alpha + beta
    long sector_weight;            // <out_charge, out_charge>/2
    Charge beta;                   // charge of the argument state
    Charge acting_charge;          // alpha, charge of the acting state
    std::vector<long> g_beta;      // G beta, for zero modes
    std::vector<long> g_alpha;     // G alpha, for the E^+ part
    bool alpha_zero = true;
    Rat prefactor;                 // cocycle sign
    GradedVector* out;

    std::vector<FockMode> legs;    // modes of the acting word
    std::vector<FockMode> rem;     // remaining modes of the argument word
    std::vector<FockMode> created; // creation modes accumulated so far
};

long rem_weight(const ModeWork& w) {
    long s = 0;
    for (const FockMode& m : w.rem) s += m.level;
    return s;
}

long created_weight(const ModeWork& w) {
    long s = 0;
    for (const FockMode& m : w.created) s += m.level;
    return s;
}

void emit(ModeWork& w, const Rat& coeff) {
    FockState word;
    word.modes = w.rem;
    word.modes.insert(word.modes.end(), w.created.begin(), w.created.end());
    word.normalize();
    w.out->add(VoaState{std::move(word), w.out_charge}, coeff * w.prefactor);
}

// E^- stage: distribute exactly `need` units of weight over creation modes
// alpha_{-q}; per color and level the expansion contributes
// (alpha_c / q)^e / e! for e modes (c, -q).
void creation_dressing(ModeWork& w, const Rat& coeff, long need, size_t color, long level) {
    if (need == 0) {
        emit(w, coeff);
        return;
    }
    if (color >= w.M->rank()) return;
    if (level > need) {
        creation_dressing(w, coeff, need, color + 1, 1);
        return;
    }
    // e = 0 for this (color, level)
    creation_dressing(w, coeff, need, color, level + 1);
    long ac = w.acting_charge[color];
    if (ac == 0) return;
    Rat factor = 1;
    for (long e = 1; e * level <= need; ++e) {
        Rat step(ac, level);
        step.canonicalize();
        factor *= step;
        factor /= e;
        for (long t = 0; t < e; ++t) w.created.push_back(FockMode{int32_t(color), int32_t(level)});
        creation_dressing(w, coeff * factor, need - e * level, color, level + 1);
        for (long t = 0; t < e; ++t) w.created.pop_back();
    }
}

// E^+ stage: every subset S of the remaining argument modes can be absorbed
// by the annihilation exponential, each element contributing -<alpha, e_c>.
void annihilation_dressing(ModeWork& w, const Rat& coeff, size_t from) {
    // close the assignment: the rest of the weight must come from E^-
    long need = w.target_weight - w.sector_weight - rem_weight(w) - created_weight(w);
    if (need >= 0) {
        if (w.alpha_zero) {
            if (need == 0) emit(w, coeff);
        } else {
            creation_dressing(w, coeff, need, 0, 1);
        }
    }
    if (w.alpha_zero) return;
    // subsets of occurrences, built in increasing index order so that each
    // subset is visited exactly once
    for (size_t i = from; i < w.rem.size(); ++i) {
        long pairing = w.g_alpha[size_t(w.rem[i].color)];
        if (pairing == 0) continue;
        FockMode taken = w.rem[i];
        w.rem.erase(w.rem.begin() + long(i));
        annihilation_dressing(w, coeff * Rat(-pairing), i);
        w.rem.insert(w.rem.begin() + long(i), taken);
    }
}

// legs stage: each Fock mode (c, n) of the acting word becomes one field leg
// that either creates, reads a zero mode, or annihilates one argument mode
void assign_legs(ModeWork& w, const Rat& coeff, size_t li) {
    if (li == w.legs.size()) {
        annihilation_dressing(w, coeff, 0);
        return;
    }
    const FockMode leg = w.legs[li];
    const long n = leg.level;

    // creation h_{-q}
    long budget = w.target_weight - w.sector_weight - created_weight(w);
    // the argument word can still lose weight to annihilation, so budget is
    // capped by target - sector - created (argument contributes >= 0)
    for (long q = 1; q <= budget; ++q) {
        Rat c = leg_coeff(-q, n);
        if (is_zero(c)) continue;
        w.created.push_back(FockMode{leg.color, int32_t(q)});
        assign_legs(w, coeff * c, li + 1);
        w.created.pop_back();
    }

    // zero mode reads <e_c, beta>
    long zm = w.g_beta[size_t(leg.color)];
    if (zm != 0) {
        Rat c = leg_coeff(0, n) * zm;
        assign_legs(w, coeff * c, li + 1);
    }

    // annihilation of one argument mode occurrence (c', p), G[c][c'] != 0;
    // summing over occurrences supplies the multiplicity factor
    for (size_t i = 0; i < w.rem.size(); ++i) {
        long g = w.M->gram()[size_t(leg.color)][size_t(w.rem[i].color)];
        if (g == 0) continue;
        long p = w.rem[i].level;
        Rat c = leg_coeff(p, n) * Rat(p * g);
        FockMode taken = w.rem[i];
        w.rem.erase(w.rem.begin() + long(i));
        assign_legs(w, coeff * c, li + 1);
        w.rem.insert(w.rem.begin() + long(i), taken);
    }
}

Charge full_charge(const FlatModel& M, const Charge& c) {
    if (c.size() == M.rank()) return c;
    require(c.empty(), "charge vector has wrong arity");
    return Charge(M.rank(), 0);
}

} // namespace

GradedVector apply_graded_mode(const FlatModel& M, const VoaState& a, long m, const VoaState& b) {
    if (const GradedVector* hit = M.mode_memo_find(a, m, b)) return *hit;
    GradedVector out;
    Charge alpha = full_charge(M, a.charge);
    Charge beta = full_charge(M, b.charge);

    ModeWork w;
    w.M = &M;
    w.target_weight = M.weight(b) - m;
    if (w.target_weight < 0) return out;
    w.out_charge.resize(M.rank());
    for (size_t i = 0; i < M.rank(); ++i) w.out_charge[i] = alpha[i] + beta[i];
    w.sector_weight = state_weight(VoaState{{}, w.out_charge}, M.gram());
    if (w.sector_weight > w.target_weight) return out;
    w.beta = beta;
    w.acting_charge = alpha;
    w.g_beta.assign(M.rank(), 0);
    w.g_alpha.assign(M.rank(), 0);
    for (size_t i = 0; i < M.rank(); ++i) {
        long sb = 0, sa = 0;
        for (size_t j = 0; j < M.rank(); ++j) {
            sb += M.gram()[i][j] * beta[j];
            sa += M.gram()[i][j] * alpha[j];
        }
        w.g_beta[i] = sb;
        w.g_alpha[i] = sa;
        if (alpha[i] != 0) w.alpha_zero = false;
    }
    w.prefactor = M.cocycle_sign(alpha, beta);
    w.out = &out;
    w.legs = a.fock.modes;
    w.rem = b.fock.modes;

    assign_legs(w, Rat(1), 0);
    return *M.mode_memo_store(a, m, b, std::move(out));
}

GradedVector apply_graded_mode(const FlatModel& M, const GradedVector& a, long m,
                               const GradedVector& b) {
    GradedVector out;
    for (const auto& [sa, ca] : a.terms())
        for (const auto& [sb, cb] : b.terms())
            out.add_scaled(apply_graded_mode(M, sa, m, sb), ca * cb);
    return out;
}

GradedVector heis_mode(const FlatModel& M, int color, long n, const GradedVector& v) {
    GradedVector out;
    for (const auto& [s, c] : v.terms()) {
        if (n < 0) {
            VoaState t = s;
            t.fock.modes.push_back(FockMode{int32_t(color), int32_t(-n)});
            t.fock.normalize();
            out.add(t, c);
        } else if (n == 0) {
            Charge beta = full_charge(M, s.charge);
            long zm = 0;
            for (size_t j = 0; j < M.rank(); ++j) zm += M.gram()[size_t(color)][j] * beta[j];
            if (zm != 0) out.add(s, c * zm);
        } else {
            for (size_t i = 0; i < s.fock.modes.size(); ++i) {
                if (i > 0 && s.fock.modes[i] == s.fock.modes[i - 1]) continue;
                const FockMode& mode = s.fock.modes[i];
                if (mode.level != n) continue;
                long g = M.gram()[size_t(color)][size_t(mode.color)];
                if (g == 0) continue;
                size_t mult = 0;
                for (const FockMode& o : s.fock.modes)
                    if (o == mode) ++mult;
                VoaState t = s;
                t.fock.modes.erase(t.fock.modes.begin() + long(i));
                out.add(t, c * Rat(long(mult) * n * g));
            }
        }
    }
    return out;
}

GradedVector virasoro(const FlatModel& M, long m, const GradedVector& v) {
    return apply_graded_mode(M, M.conformal_vector(), m, v);
}

GradedVector translation_descendant(const FlatModel& M, const GradedVector& a, int j) {
    GradedVector cur = a;
    for (int t = 1; t <= j; ++t) {
        cur = virasoro(M, -1, cur);
        cur = cur * Rat(1, t);
    }
    return cur;
}

namespace {

// coordinates of a graded vector over the weight basis
std::vector<Rat> coords(const FlatModel& M, const GradedVector& v, long k) {
    const std::vector<VoaState>& b = M.basis(k);
    std::vector<Rat> out(b.size(), Rat(0));
    for (const auto& [s, c] : v.terms()) {
        auto it = std::lower_bound(b.begin(), b.end(), s);
        require(it != b.end() && *it == s, "coords: state not in the weight basis");
        out[size_t(it - b.begin())] = c;
    }
    return out;
}

} // namespace

std::vector<GradedVector> qp_kernel(const FlatModel& M, long k) {
    const std::vector<VoaState>& b = M.basis(k);
    if (b.empty()) return {};
    if (k == 0) return {M.vacuum()};
    const std::vector<VoaState>& lower = M.basis(k - 1);
    MatQ l1(lower.size(), b.size());
    for (size_t j = 0; j < b.size(); ++j) {
        GradedVector img = virasoro(M, 1, GradedVector(b[j]));
        std::vector<Rat> col = coords(M, img, k - 1);
        for (size_t i = 0; i < lower.size(); ++i) l1.at(i, j) = col[i];
    }
    std::vector<GradedVector> out;
    for (const std::vector<Rat>& v : l1.nullspace()) {
        GradedVector g;
        for (size_t j = 0; j < b.size(); ++j) g.add(b[j], v[j]);
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<GradedVector> dual_family(const FlatModel& M, const std::vector<GradedVector>& spans) {
    size_t n = spans.size();
    if (n == 0) return {};
    MatQ gram(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) gram.at(i, j) = bilinear(M, spans[i], spans[j]);
    MatQ inv = gram.inverse();
    std::vector<GradedVector> duals(n);
    for (size_t i = 0; i < n; ++i) {
        GradedVector d;
        for (size_t j = 0; j < n; ++j) d.add_scaled(spans[j], inv.at(i, j));
        duals[i] = std::move(d);
    }
    return duals;
}

Rat bilinear(const FlatModel& M, const GradedVector& u, const GradedVector& v) {
    Rat acc = 0;
    for (const auto& [su, cu] : u.terms())
        for (const auto& [sv, cv] : v.terms()) acc += cu * cv * M.bilinear(su, sv);
    return acc;
}

Rat scalar(const FlatModel& M, const GradedVector& u, const GradedVector& v) {
    Rat acc = 0;
    for (const auto& [su, cu] : u.terms())
        for (const auto& [sv, cv] : v.terms()) acc += cu * cv * M.scalar(su, sv);
    return acc;
}

// ---- M_r(1) wrappers from fock.hpp ----

GradedVector heis_mode_apply(int rank, int color, long n, const GradedVector& v) {
    FlatModel M(VOAModel::heisenberg(rank));
    return heis_mode(M, color, n, v);
}

GradedVector virasoro_mode(int rank, long m, const GradedVector& v) {
    FlatModel M(VOAModel::heisenberg(rank));
    return virasoro(M, m, v);
}

std::vector<GradedVector> qp_subspace(int rank, int weight) {
    FlatModel M(VOAModel::heisenberg(rank));
    return qp_kernel(M, weight);
}

} // namespace voapf
