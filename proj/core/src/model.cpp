#include "voapf/model.hpp"

#include <algorithm>
#include <map>

namespace voapf {

VOAModel VOAModel::heisenberg(int rank) {
    require(rank >= 0, "heisenberg: negative rank");
    VOAModel m;
    m.kind = Kind::Heisenberg;
    m.heis_rank = rank;
    return m;
}

VOAModel VOAModel::lattice_model(EvenLattice L) {
    L.validate();
    VOAModel m;
    m.kind = Kind::Lattice;
    m.lattice = std::move(L);
    return m;
}

VOAModel VOAModel::tensor(std::vector<VOAModel> factors) {
    VOAModel m;
    m.kind = Kind::Tensor;
    m.factors = std::move(factors);
    return m;
}

long VOAModel::central_charge() const {
    switch (kind) {
        case Kind::Heisenberg: return heis_rank;
        case Kind::Lattice: return long(lattice.rank());
        case Kind::Tensor: {
            long c = 0;
            for (const VOAModel& f : factors) c += f.central_charge();
            return c;
        }
    }
    return 0;
}

std::string VOAModel::describe() const {
    switch (kind) {
        case Kind::Heisenberg: return "heisenberg:" + std::to_string(heis_rank);
        case Kind::Lattice: return "lattice:" + lattice.name;
        case Kind::Tensor: {
            std::string s = "tensor:";
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) s += ',';
                s += factors[i].describe();
            }
            return s;
        }
    }
    return "?";
}

void VOAModel::check_holomorphic_claim() const {
    if (central_charge() % 8 != 0)
        throw domain_error("holomorphic claim: central charge must be a multiple of 8");
    if (kind == Kind::Lattice) {
        MatQ g(lattice.rank(), lattice.rank());
        for (size_t i = 0; i < lattice.rank(); ++i)
            for (size_t j = 0; j < lattice.rank(); ++j) g.at(i, j) = lattice.gram[i][j];
        if (g.det() != 1) throw domain_error("holomorphic claim: lattice is not unimodular");
    }
    if (kind == Kind::Tensor)
        for (const VOAModel& f : factors) {
            if (f.kind == Kind::Lattice) {
                VOAModel copy = f;
                // factor charge can be any multiple of 8 only jointly; check
                // unimodularity per lattice factor
                MatQ g(f.lattice.rank(), f.lattice.rank());
                for (size_t i = 0; i < f.lattice.rank(); ++i)
                    for (size_t j = 0; j < f.lattice.rank(); ++j) g.at(i, j) = f.lattice.gram[i][j];
                if (g.det() != 1)
                    throw domain_error("holomorphic claim: lattice factor is not unimodular");
            }
        }
}

struct FlatModel::Cache {
    std::mutex mu;
    std::map<long, std::vector<VoaState>> basis;
    std::map<long, std::vector<GradedVector>> duals;
    // Fock scalar-product Gram inverses per dressing weight, shared by all
    // charge sectors
    std::map<long, MatQ> fock_inv;
    std::mutex mode_mu;
    std::map<std::tuple<VoaState, long, VoaState>, GradedVector> mode_memo;
};

namespace {

void collect_blocks(const VOAModel& m, std::vector<const VOAModel*>& leaves) {
    if (m.kind == VOAModel::Kind::Tensor) {
        for (const VOAModel& f : m.factors) collect_blocks(f, leaves);
    } else {
        leaves.push_back(&m);
    }
}

} // namespace

FlatModel::FlatModel(const VOAModel& m) : source_(m), cache_(std::make_shared<Cache>()) {
    std::vector<const VOAModel*> leaves;
    collect_blocks(m, leaves);

    size_t rank = 0;
    for (const VOAModel* leaf : leaves)
        rank += leaf->kind == VOAModel::Kind::Heisenberg ? size_t(leaf->heis_rank)
                                                         : leaf->lattice.rank();
    gram_.assign(rank, std::vector<long>(rank, 0));

    size_t off = 0;
    for (const VOAModel* leaf : leaves) {
        if (leaf->kind == VOAModel::Kind::Heisenberg) {
            for (int i = 0; i < leaf->heis_rank; ++i) gram_[off + size_t(i)][off + size_t(i)] = 1;
            off += size_t(leaf->heis_rank);
        } else {
            size_t r = leaf->lattice.rank();
            for (size_t i = 0; i < r; ++i) {
                charge_embed_.push_back(off + i);
                for (size_t j = 0; j < r; ++j) gram_[off + i][off + j] = leaf->lattice.gram[i][j];
            }
            off += r;
        }
    }
    charge_rank_ = charge_embed_.size();

    if (charge_rank_ > 0) {
        IntMat cg(charge_rank_, std::vector<long>(charge_rank_, 0));
        for (size_t i = 0; i < charge_rank_; ++i)
            for (size_t j = 0; j < charge_rank_; ++j)
                cg[i][j] = gram_[charge_embed_[i]][charge_embed_[j]];
        charge_lattice_ = EvenLattice{"charges", cg};
        cocycle_ = Cocycle(charge_lattice_);
    }

    gram_inv_ = MatQ(rank, rank);
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j) gram_inv_.at(i, j) = gram_[i][j];
    if (rank > 0) gram_inv_ = gram_inv_.inverse();
}

Charge FlatModel::project_charge(const Charge& full) const {
    Charge out(charge_rank_, 0);
    for (size_t i = 0; i < charge_rank_; ++i) out[i] = full[charge_embed_[i]];
    // charges must vanish on free-boson coordinates
    for (size_t i = 0; i < full.size(); ++i) {
        bool is_charge_coord = false;
        for (size_t k : charge_embed_)
            if (k == i) {
                is_charge_coord = true;
                break;
            }
        if (!is_charge_coord) require(full[i] == 0, "charge on a free-boson coordinate");
    }
    return out;
}

Rat FlatModel::scalar(const VoaState& u, const VoaState& v) const {
    if (u.charge != v.charge) {
        Charge cu = u.charge.empty() ? Charge(rank(), 0) : u.charge;
        Charge cv = v.charge.empty() ? Charge(rank(), 0) : v.charge;
        if (cu != cv) return 0;
    }
    return scalar_product(u.fock, v.fock, gram_);
}

int FlatModel::cocycle_sign(const Charge& a, const Charge& b) const {
    if (charge_rank_ == 0) return 1;
    return cocycle_.sign(project_charge(a), project_charge(b));
}

Rat FlatModel::charge_pairing(const Charge& a) const {
    if (charge_rank_ == 0) return 1;
    Charge pa = project_charge(a);
    Charge na(pa.size());
    for (size_t i = 0; i < pa.size(); ++i) na[i] = -pa[i];
    long n2 = charge_lattice_.norm(pa);
    int sign = cocycle_.sign(pa, na);
    Rat out = sign;
    if ((n2 / 2) % 2 != 0) out = -out;
    return out;
}

Rat FlatModel::bilinear(const VoaState& u, const VoaState& v) const {
    Charge cu = u.charge.empty() ? Charge(rank(), 0) : u.charge;
    Charge cv = v.charge.empty() ? Charge(rank(), 0) : v.charge;
    for (size_t i = 0; i < rank(); ++i)
        if (cu[i] + cv[i] != 0) return 0;
    Rat s = scalar_product(u.fock, v.fock, gram_) * charge_pairing(cu);
    return (u.fock.size() % 2 == 0) ? s : -s;
}

std::vector<Charge> FlatModel::charges_with_halfnorm_up_to(long w) const {
    std::vector<Charge> out;
    if (charge_rank_ == 0) {
        out.push_back(Charge(rank(), 0));
        return out;
    }
    EnumOptions opts;
    opts.exact_prune = charge_lattice_.rank() <= 8;
    EnumResult res = enumerate_by_norm(charge_lattice_, 2 * w, opts);
    for (const auto& [norm, vecs] : res.vectors) {
        (void)norm;
        for (const Charge& v : vecs) {
            Charge full(rank(), 0);
            for (size_t i = 0; i < charge_rank_; ++i) full[charge_embed_[i]] = v[i];
            out.push_back(std::move(full));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<VoaState>& FlatModel::basis(long k) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->basis.find(k);
    if (it != cache_->basis.end()) return it->second;

    std::vector<VoaState> out;
    if (rank() == 0) {
        if (k == 0) out.push_back(VoaState{{}, {}});
    } else {
        for (const Charge& alpha : charges_with_halfnorm_up_to(k)) {
            long halfnorm = 0;
            if (charge_rank_ > 0) halfnorm = charge_lattice_.norm(project_charge(alpha)) / 2;
            long fock_weight = k - halfnorm;
            if (fock_weight < 0) continue;
            for (const FockState& w : voapf::basis(int(rank()), int(fock_weight)))
                out.push_back(VoaState{w, alpha});
        }
        std::sort(out.begin(), out.end());
    }
    return cache_->basis.emplace(k, std::move(out)).first->second;
}

const std::vector<GradedVector>& FlatModel::dual_basis(long k) const {
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->duals.find(k);
        if (it != cache_->duals.end()) return it->second;
    }
    const std::vector<VoaState>& b = basis(k);

    // group indices by charge sector
    std::map<Charge, std::vector<size_t>> sectors;
    for (size_t i = 0; i < b.size(); ++i) sectors[b[i].charge].push_back(i);

    // Fock gram inverse for one dressing weight; monomial words sorted, so
    // sector index lists line up across charges of equal dressing weight
    auto fock_inverse = [&](long dressing) -> MatQ {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->fock_inv.find(dressing);
        if (it != cache_->fock_inv.end()) return it->second;
        std::vector<FockState> words = voapf::basis(int(rank()), int(dressing));
        MatQ f(words.size(), words.size());
        for (size_t i = 0; i < words.size(); ++i)
            for (size_t j = i; j < words.size(); ++j) {
                f.at(i, j) = scalar_product(words[i], words[j], gram_);
                f.at(j, i) = f.at(i, j);
            }
        MatQ inv = f.inverse();
        cache_->fock_inv.emplace(dressing, inv);
        return inv;
    };

    std::vector<GradedVector> duals(b.size());
    for (const auto& [alpha, idx] : sectors) {
        Charge neg(alpha.size());
        for (size_t i = 0; i < alpha.size(); ++i) neg[i] = -alpha[i];
        auto nit = sectors.find(neg);
        require(nit != sectors.end(), "dual_basis: missing opposite charge sector");
        const std::vector<size_t>& nidx = nit->second;
        require(nidx.size() == idx.size(), "dual_basis: sector size mismatch");

        long dressing = weight(b[idx[0]]) - state_weight(VoaState{{}, alpha}, gram_);
        MatQ finv = fock_inverse(dressing);
        Rat kap = charge_pairing(alpha);

        // pairing of the alpha sector against the -alpha sector is
        // M[i][j] = (-1)^{|u_i|} F[i][j] kappa(alpha), so the dual of
        // b_{idx[a]} is sum_j (-1)^{|u_a|} F^{-1}[a][j] / kappa * b_{nidx[j]}
        for (size_t a = 0; a < idx.size(); ++a) {
            GradedVector d;
            for (size_t j = 0; j < nidx.size(); ++j) {
                Rat c = finv.at(a, j) / kap;
                if ((b[idx[a]].fock.size() % 2) != 0) c = -c;
                d.add(b[nidx[j]], c);
            }
            duals[idx[a]] = std::move(d);
        }
    }

    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->duals.emplace(k, std::move(duals)).first->second;
}

Int FlatModel::graded_dim(long k) const {
    if (rank() == 0) return k == 0 ? 1 : 0;
    if (charge_rank_ == 0) return colored_partition_count(int(rank()), int(k));
    USeries theta = theta_genus1(charge_lattice_, int(k));
    USeries parts = colored_partition_series(int(rank()), int(k));
    Rat acc = 0;
    for (int m = 0; m <= int(k); ++m) acc += theta[m] * parts[int(k) - m];
    require(acc.get_den() == 1, "graded_dim: non-integer");
    return acc.get_num();
}

const GradedVector* FlatModel::mode_memo_find(const VoaState& a, long m,
                                              const VoaState& b) const {
    std::lock_guard<std::mutex> lock(cache_->mode_mu);
    auto it = cache_->mode_memo.find(std::tuple<VoaState, long, VoaState>(a, m, b));
    return it == cache_->mode_memo.end() ? nullptr : &it->second;
}

const GradedVector* FlatModel::mode_memo_store(const VoaState& a, long m, const VoaState& b,
                                               GradedVector value) const {
    std::lock_guard<std::mutex> lock(cache_->mode_mu);
    auto [it, inserted] =
        cache_->mode_memo.emplace(std::tuple<VoaState, long, VoaState>(a, m, b), std::move(value));
    (void)inserted;
    return &it->second;
}

BilinearGram lattice_bilinear_gram(const EvenLattice& L, long k) {
    FlatModel M(VOAModel::lattice_model(L));
    BilinearGram out;
    out.weight = k;
    out.basis = M.basis(k);
    size_t n = out.basis.size();
    out.gram = MatQ(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            out.gram.at(i, j) = M.bilinear(out.basis[i], out.basis[j]);
            out.gram.at(j, i) = out.gram.at(i, j);
        }
    return out;
}

GradedVector FlatModel::conformal_vector() const {
    GradedVector nu;
    for (size_t a = 0; a < rank(); ++a)
        for (size_t b = a; b < rank(); ++b) {
            Rat c = gram_inv_.at(a, b);
            if (a == b) c /= 2;
            if (is_zero(c)) continue;
            FockState s{{FockMode{int32_t(a), 1}, FockMode{int32_t(b), 1}}};
            s.normalize();
            nu.add(VoaState{s, Charge(rank(), 0)}, c);
        }
    return nu;
}

} // namespace voapf
