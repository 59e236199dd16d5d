#include "voapf/fock.hpp"

#include "voapf/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace voapf {

IntMat identity_mat(size_t n) {
    IntMat g(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) g[i][i] = 1;
    return g;
}

void FockState::normalize() { std::sort(modes.begin(), modes.end()); }

long FockState::weight() const {
    long w = 0;
    for (const FockMode& m : modes) w += m.level;
    return w;
}

std::string FockState::to_string() const {
    if (modes.empty()) return "vac";
    std::ostringstream os;
    for (size_t i = 0; i < modes.size(); ++i) {
        if (i) os << ' ';
        os << "h[" << modes[i].color + 1 << ",-" << modes[i].level << "]";
    }
    return os.str();
}

bool VoaState::neutral() const {
    for (long c : charge)
        if (c != 0) return false;
    return true;
}

bool VoaState::operator==(const VoaState& o) const {
    if (fock != o.fock) return false;
    if (charge == o.charge) return true;
    return neutral() && o.neutral();
}

bool VoaState::operator<(const VoaState& o) const {
    if (fock != o.fock) return fock < o.fock;
    bool n1 = neutral(), n2 = o.neutral();
    if (n1 && n2) return false;
    if (n1 != n2) return n1; // neutral sorts first
    return charge < o.charge;
}

std::string VoaState::to_string() const {
    std::string s = fock.to_string();
    if (!neutral()) {
        s += " e[";
        for (size_t i = 0; i < charge.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(charge[i]);
        }
        s += ']';
    }
    return s;
}

long state_weight(const VoaState& s, const IntMat& gram) {
    long w = s.fock.weight();
    if (!s.neutral()) {
        long n2 = 0;
        for (size_t i = 0; i < s.charge.size(); ++i)
            for (size_t j = 0; j < s.charge.size(); ++j)
                n2 += s.charge[i] * gram[i][j] * s.charge[j];
        require(n2 % 2 == 0, "state_weight: odd charge norm on an even lattice");
        w += n2 / 2;
    }
    return w;
}

void GradedVector::add(const VoaState& s, const Rat& c) {
    if (voapf::is_zero(c)) return;
    Rat& slot = terms_[s];
    slot += c;
    if (voapf::is_zero(slot)) terms_.erase(s);
}

void GradedVector::add_scaled(const GradedVector& v, const Rat& c) {
    if (voapf::is_zero(c)) return;
    for (const auto& [s, a] : v.terms_) add(s, a * c);
}

GradedVector GradedVector::operator*(const Rat& c) const {
    GradedVector out;
    out.add_scaled(*this, c);
    return out;
}

GradedVector GradedVector::operator+(const GradedVector& o) const {
    GradedVector out = *this;
    out.add_scaled(o, 1);
    return out;
}

GradedVector GradedVector::operator-(const GradedVector& o) const {
    GradedVector out = *this;
    out.add_scaled(o, -1);
    return out;
}

Rat GradedVector::coeff(const VoaState& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rat(0) : it->second;
}

std::string GradedVector::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        if (!first) os << " + ";
        os << '(' << c.get_str() << ")*" << s.to_string();
        first = false;
    }
    return os.str();
}

namespace {

void enumerate_words(int rank, int remaining, int min_level, int min_color,
                     std::vector<FockMode>& cur, std::vector<FockState>& out) {
    if (remaining == 0) {
        FockState s{cur};
        out.push_back(std::move(s));
        return;
    }
    for (int level = min_level; level <= remaining; ++level) {
        int color0 = (level == min_level) ? min_color : 0;
        for (int color = color0; color < rank; ++color) {
            cur.push_back({color, level});
            enumerate_words(rank, remaining - level, level, color, cur, out);
            cur.pop_back();
        }
    }
}

} // namespace

std::vector<FockState> basis(int rank, int weight) {
    require(rank >= 1 && weight >= 0, "basis: bad rank or weight");
    std::vector<FockState> out;
    std::vector<FockMode> cur;
    enumerate_words(rank, weight, 1, 0, cur, out);
    for (FockState& s : out) s.normalize();
    std::sort(out.begin(), out.end());
    return out;
}

long colored_partition_count(int colors, int weight) {
    USeries s = colored_partition_series(colors, weight);
    Rat c = s[weight];
    require(c.get_den() == 1, "colored_partition_count: non-integer");
    return long(c.get_num().get_si());
}

namespace {

// sum over level-preserving matchings of the factors, each contributing
// level * G[c][c']
Rat contract(std::vector<FockMode>& us, std::vector<FockMode>& vs, const IntMat& gram) {
    if (us.empty()) return vs.empty() ? Rat(1) : Rat(0);
    if (us.size() != vs.size()) return 0;
    FockMode lead = us.back();
    us.pop_back();
    Rat acc = 0;
    for (size_t j = 0; j < vs.size(); ++j) {
        if (vs[j].level != lead.level) continue;
        long g = gram[size_t(lead.color)][size_t(vs[j].color)];
        if (g == 0) continue;
        FockMode saved = vs[j];
        vs.erase(vs.begin() + long(j));
        acc += Rat(lead.level * g) * contract(us, vs, gram);
        vs.insert(vs.begin() + long(j), saved);
    }
    us.push_back(lead);
    return acc;
}

} // namespace

Rat scalar_product(const FockState& u, const FockState& v, const IntMat& gram) {
    if (u.weight() != v.weight()) return 0;
    std::vector<FockMode> us = u.modes, vs = v.modes;
    return contract(us, vs, gram);
}

Rat scalar_product(const FockState& u, const FockState& v) {
    if (u.modes.empty() && v.modes.empty()) return 1;
    int rank = 0;
    for (const FockMode& m : u.modes) rank = std::max(rank, m.color + 1);
    for (const FockMode& m : v.modes) rank = std::max(rank, m.color + 1);
    return scalar_product(u, v, identity_mat(size_t(rank)));
}

Rat bilinear_form(const FockState& u, const FockState& v) {
    Rat s = scalar_product(u, v);
    return (u.size() % 2 == 0) ? s : -s;
}

std::vector<GradedVector> dual_basis(int rank, int weight) {
    std::vector<FockState> b = basis(rank, weight);
    std::vector<GradedVector> out;
    out.reserve(b.size());
    for (const FockState& s : b) {
        Rat d = bilinear_form(s, s);
        require(!is_zero(d), "dual_basis: degenerate monomial Gram");
        out.emplace_back(VoaState{s, {}}, Rat(1) / d);
    }
    return out;
}

} // namespace voapf
