#include "rostlab/extension.hpp"

#include <numeric>
#include <utility>

#include "rostlab/error.hpp"

namespace rostlab {

namespace {

constexpr long long kFieldCap = 65536;  // table cap for materialized F_q

long long mod_pos(long long a, long long m) { return ((a % m) + m) % m; }

int inv_mod(int a, int m) {
    // extended Euclid; a must be a unit mod m
    int r0 = m, r1 = (int)mod_pos(a, m), t0 = 0, t1 = 1;
    while (r1 != 0) {
        int q = r0 / r1;
        int r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1; r1 = r2; t0 = t1; t1 = t2;
    }
    check_internal(r0 == 1, "inverse of a non-unit requested");
    return (int)mod_pos(t0, m);
}

// Rebuilds e over target (same shape over a different base field),
// passing every depth-0 scalar through fn.
FieldElement rebase(const FieldElement& e, const TowerField& target,
                    const std::function<int(int)>& fn) {
    if (target.depth() == 0) {
        int v = fn(e.is_zero() ? 0 : e.scalar_value());
        return target.scalar(v);
    }
    if (e.is_zero()) return target.zero();
    TowerField sub = target.residue_field();
    int v = e.valuation();
    std::vector<FieldElement> coeffs;
    coeffs.reserve(e.coeff_count());
    for (int j = 0; j < e.coeff_count(); ++j)
        coeffs.push_back(rebase(e.coeff(v + j), sub, fn));
    return target.make(v, std::move(coeffs));
}

// x_lev = T^lm / mono, applied coefficientwise from the top of the tower.
FieldElement kummer_embed_rec(const FieldElement& e, const TowerField& t, int lev,
                              int lm, const FieldElement& mono) {
    if (e.field().depth() < lev) return e;
    if (e.is_zero()) return t.zero();
    int v = e.valuation();
    if (e.field().depth() > lev) {
        TowerField sub = t.residue_field();
        std::vector<FieldElement> coeffs;
        coeffs.reserve(e.coeff_count());
        for (int j = 0; j < e.coeff_count(); ++j)
            coeffs.push_back(kummer_embed_rec(e.coeff(v + j), sub, lev, lm, mono));
        return t.make(v, std::move(coeffs));
    }
    FieldElement out = t.zero();
    for (int j = 0; j < e.coeff_count(); ++j) {
        FieldElement c = e.coeff(v + j);
        if (c.is_zero()) continue;
        out = out + t.from_residue(c * mono.pow(-(long long)(v + j)))
                        .shifted(lm * (v + j));
    }
    return out;
}

// T -> zeta_lm * T on the level-lev coefficient lists.
FieldElement kummer_conj_rec(const FieldElement& e, int lev, int zlm, int lm) {
    if (e.field().depth() < lev || e.is_zero()) return e;
    int v = e.valuation();
    const TowerField& t = e.field();
    std::vector<FieldElement> coeffs;
    coeffs.reserve(e.coeff_count());
    if (t.depth() > lev) {
        for (int j = 0; j < e.coeff_count(); ++j)
            coeffs.push_back(kummer_conj_rec(e.coeff(v + j), lev, zlm, lm));
    } else {
        TowerField sub = t.residue_field();
        const FqPtr& k0 = t.base();
        for (int j = 0; j < e.coeff_count(); ++j) {
            int s = k0->pow(zlm, mod_pos(v + j, lm));
            coeffs.push_back(e.coeff(v + j) * sub.scalar(s));
        }
    }
    return t.make(v, std::move(coeffs));
}

// Inverse of the embedding on Galois-invariant elements.
FieldElement kummer_pull_rec(const FieldElement& e, const TowerField& base_t,
                             int lev, int lm, const FieldElement& mono) {
    if (e.field().depth() < lev) return e;
    if (e.is_zero()) return base_t.zero();
    int v = e.valuation();
    if (e.field().depth() > lev) {
        TowerField sub = base_t.residue_field();
        std::vector<FieldElement> coeffs;
        coeffs.reserve(e.coeff_count());
        for (int j = 0; j < e.coeff_count(); ++j)
            coeffs.push_back(kummer_pull_rec(e.coeff(v + j), sub, lev, lm, mono));
        return base_t.make(v, std::move(coeffs));
    }
    for (int j = 0; j < e.coeff_count(); ++j)
        check_internal(mod_pos(v + j, lm) == 0 || e.coeff(v + j).is_zero(),
                       "norm is not Galois invariant");
    check_internal(mod_pos(v, lm) == 0, "norm valuation is not divisible");
    int v0 = v / lm;
    int last = (v + e.coeff_count() - 1) / lm;
    std::vector<FieldElement> coeffs;
    for (int s = v0; s <= last; ++s) {
        FieldElement c = e.coeff(lm * s);
        coeffs.push_back(c.is_zero() ? c : c * mono.pow(s));
    }
    return base_t.make(v0, std::move(coeffs));
}

std::vector<std::vector<int>> mat_mul(const std::vector<std::vector<int>>& A,
                                      const std::vector<std::vector<int>>& B, int M) {
    std::vector<std::vector<int>> out(A.size(), std::vector<int>(B[0].size(), 0));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t k = 0; k < B.size(); ++k)
            for (size_t j = 0; j < B[0].size(); ++j)
                out[i][j] = (int)mod_pos(out[i][j] + (long long)A[i][k] * B[k][j], M);
    return out;
}

} // namespace

CyclicExtension CyclicExtension::make_unramified(const TowerField& F, int f) {
    if (f < 1) fail("PreconditionViolated", "extension degree must be positive");
    CyclicExtension E;
    E.kind_ = Kind::Unramified;
    E.base_ = F;
    E.degree_ = f;
    E.f_ = f;
    long long Q = 1;
    bool fits = true;
    for (int i = 0; i < f; ++i) {
        Q *= F.q();
        if (Q > kFieldCap) { fits = false; break; }
    }
    E.materialized_ = fits;
    if (fits) E.ext_.push_back(F.with_base((int)Q));
    return E;
}

CyclicExtension CyclicExtension::make_kummer(const TowerField& F, const FieldElement& b,
                                             int m) {
    if (b.field() != F) fail("FieldMismatch", "radicand lives in a different field");
    if (b.is_zero()) fail("NotAField", "radicand is zero");
    if (m < 1) fail("PreconditionViolated", "kummer exponent must be positive");
    if (m > F.n())
        fail("PreconditionViolated", "kummer degree exceeds the root-of-unity supply");
    int lm = 1;
    for (int i = 0; i < m; ++i) lm *= F.ell();

    std::vector<int> w = b.kummer_class();
    for (int& c : w) c = (int)mod_pos(c, lm);
    int d = F.depth();
    int lev = 0;
    for (int i = d; i >= 1; --i)
        if (w[i] != 0) { lev = i; break; }

    if (lev == 0) {
        if (w[0] == 0) fail("NotAField", "radicand class is already a full power");
        if (w[0] % F.ell() == 0)
            fail("NotAField", "constant radicand of deficient order");
        return make_unramified(F, lm);
    }
    if (std::gcd(w[lev], F.ell()) != 1)
        fail("UnsupportedShape",
             "top uniformizer exponent of the radicand shares a factor with l");

    int s = inv_mod(w[lev], lm);
    std::vector<int> cls(d + 1, 0);
    for (int i = 0; i < lev; ++i) cls[i] = (int)mod_pos((long long)s * w[i], lm);
    cls[lev] = 1;

    CyclicExtension E;
    E.kind_ = Kind::Kummer;
    E.base_ = F;
    E.degree_ = lm;
    E.materialized_ = true;
    E.level_ = lev;
    E.m_ = m;
    E.u_ = cls;
    std::vector<int> prec;
    for (int i = 1; i <= d; ++i) prec.push_back(F.precision(i) * (i == lev ? lm : 1));
    E.ext_.emplace_back(F.q(), F.ell(), F.n(), d, std::move(prec));
    E.bnorm_.push_back(F.representative(cls));
    TowerField below = F;
    for (int k = d; k >= lev; --k) below = below.residue_field();
    E.bnorm_.push_back(
        below.representative(std::vector<int>(cls.begin(), cls.begin() + lev)));
    return E;
}

const TowerField& CyclicExtension::ext_field() const {
    if (!materialized_)
        fail("PreconditionViolated", "extension field is not materialized");
    return ext_[0];
}

int CyclicExtension::level() const {
    if (kind_ != Kind::Kummer)
        fail("PreconditionViolated", "only kummer extensions carry a level");
    return level_;
}

const FieldElement& CyclicExtension::kummer_generator() const {
    if (kind_ != Kind::Kummer)
        fail("PreconditionViolated", "only kummer extensions carry a generator");
    return bnorm_[0];
}

FieldElement CyclicExtension::embed(const FieldElement& e) const {
    if (e.field() != base_) fail("FieldMismatch", "element is not in the base field");
    const TowerField& E = ext_field();
    if (kind_ == Kind::Unramified) {
        if (f_ == 1) return e;
        auto emb = FqEmbedding::get(base_.q(), E.q());
        return rebase(e, E, [&emb](int a) { return emb->embed(a); });
    }
    // mono lives just below the ramified level and is exactly invertible
    return kummer_embed_rec(e, E, level_, degree_, bnorm_[1]);
}

FieldElement CyclicExtension::conj(const FieldElement& e) const {
    const TowerField& E = ext_field();
    if (e.field() != E) fail("FieldMismatch", "element is not in the extension field");
    if (kind_ == Kind::Unramified) {
        int q = base_.q();
        const FqPtr& big = E.base();
        return e.map_scalars([&big, q](int a) { return big->pow(a, q); });
    }
    int zlm = base_.base()->pow(base_.base()->zeta(), (base_.q() - 1) / degree_);
    return kummer_conj_rec(e, level_, zlm, degree_);
}

FieldElement CyclicExtension::norm(const FieldElement& e) const {
    const TowerField& E = ext_field();
    if (e.field() != E) fail("FieldMismatch", "element is not in the extension field");
    if (e.is_zero()) return base_.zero();
    FieldElement p = e, c = e;
    for (int t = 1; t < degree_; ++t) {
        c = conj(c);
        p = p * c;
    }
    if (kind_ == Kind::Unramified) {
        if (f_ == 1) return p;
        auto emb = FqEmbedding::get(base_.q(), E.q());
        return rebase(p, base_, [&emb](int A) {
            check_internal(emb->in_subfield(A), "norm left the base field");
            return emb->project(A);
        });
    }
    return kummer_pull_rec(p, base_, level_, degree_, bnorm_[1]);
}

std::vector<std::vector<int>> CyclicExtension::class_map() const {
    const TowerField& E = ext_field();
    int d = base_.depth(), M = base_.class_modulus();
    std::vector<std::vector<int>> rows(d + 1, std::vector<int>(d + 1, 0));
    for (int i = 0; i <= d; ++i) rows[i][i] = 1;
    if (kind_ == Kind::Unramified) {
        if (f_ == 1) return rows;
        auto emb = FqEmbedding::get(base_.q(), E.q());
        int D = (int)mod_pos(emb->big()->dlog(emb->embed(base_.base()->zeta())), M);
        rows[0][0] = D;
        return rows;
    }
    // x_lev = T^lm / mono
    rows[level_].assign(d + 1, 0);
    rows[level_][level_] = (int)mod_pos(degree_, M);
    for (int i = 0; i < level_; ++i)
        rows[level_][i] = (int)mod_pos(-(long long)u_[i], M);
    return rows;
}

std::vector<std::vector<int>> CyclicExtension::norm_matrix() const {
    const TowerField& E = ext_field();
    int d = base_.depth(), M = base_.class_modulus();
    std::vector<std::vector<int>> rows(d + 1, std::vector<int>(d + 1, 0));
    if (kind_ == Kind::Unramified) {
        if (f_ == 1) {
            for (int i = 0; i <= d; ++i) rows[i][i] = 1;
            return rows;
        }
        auto emb = FqEmbedding::get(base_.q(), E.q());
        rows[0][0] = (int)mod_pos(base_.base()->dlog(emb->norm(emb->big()->zeta())), M);
        for (int i = 1; i <= d; ++i) rows[i][i] = (int)mod_pos(f_, M);
        return rows;
    }
    for (int i = 0; i <= d; ++i)
        if (i != level_) rows[i][i] = (int)mod_pos(degree_, M);
    FieldElement nt = bnorm_[0];
    if (degree_ % 2 == 0) nt = -nt;  // N(T) = (-1)^(lm+1) b_norm
    rows[level_] = nt.kummer_class();
    return rows;
}

CohClass CyclicExtension::restrict_to_ext(const CohClass& alpha) const {
    const TowerField& E = ext_field();
    if (alpha.field() != base_) fail("FieldMismatch", "class is not over the base field");
    if (alpha.degree() == 0)
        return CohClass::from_coeff_vector(E, 0, alpha.coeff_vector());
    auto cm = class_map();
    CohClass out(E, alpha.degree());
    for (const auto& [key, c] : alpha.terms()) {
        std::vector<std::vector<int>> entries;
        for (int b = 0; b <= base_.depth(); ++b)
            if (key >> b & 1u) entries.push_back(cm[b]);
        out = out + CohClass::symbol(E, entries).scaled(c);
    }
    return out;
}

bool CyclicExtension::splits(const CohClass& alpha) const {
    if (alpha.field() != base_) fail("FieldMismatch", "class is not over the base field");
    if (kind_ == Kind::Kummer) return restrict_to_ext(alpha).is_zero();
    int M = base_.class_modulus();
    bool formula = true;
    for (const auto& [key, c] : alpha.terms()) {
        long long kill = (key & 1u) ? (long long)f_ * c : c;
        if (mod_pos(kill, M) != 0) { formula = false; break; }
    }
    if (materialized_)
        check_internal(formula == restrict_to_ext(alpha).is_zero(),
                       "split criterion disagrees with the restriction");
    return formula;
}

Subgroup CyclicExtension::norm_class_group() const {
    int d = base_.depth(), M = base_.class_modulus();
    if (kind_ == Kind::Kummer) return Subgroup::span(M, d + 1, norm_matrix());
    std::vector<std::vector<int>> gens(d + 1, std::vector<int>(d + 1, 0));
    gens[0][0] = 1;
    for (int i = 1; i <= d; ++i) gens[i][i] = (int)mod_pos(f_, M);
    return Subgroup::span(M, d + 1, gens);
}

FieldElement chain_norm(const std::vector<CyclicExtension>& chain, FieldElement e) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) e = it->norm(e);
    return e;
}

std::vector<std::vector<int>> chain_class_map(const std::vector<CyclicExtension>& chain) {
    if (chain.empty()) fail("PreconditionViolated", "empty extension chain");
    int M = chain[0].base().class_modulus();
    auto m = chain[0].class_map();
    for (size_t j = 1; j < chain.size(); ++j) {
        if (chain[j].base() != chain[j - 1].ext_field())
            fail("PreconditionViolated", "chain steps do not compose");
        m = mat_mul(m, chain[j].class_map(), M);
    }
    return m;
}

Subgroup chain_norm_class_group(const std::vector<CyclicExtension>& chain) {
    if (chain.empty()) fail("PreconditionViolated", "empty extension chain");
    int M = chain.back().base().class_modulus();
    int r = chain.back().base().depth() + 1;
    Subgroup g = Subgroup::full(M, r);
    for (int j = (int)chain.size() - 1; j >= 0; --j) {
        if (j + 1 < (int)chain.size() && chain[j + 1].base() != chain[j].ext_field())
            fail("PreconditionViolated", "chain steps do not compose");
        g = g.image(chain[j].base().depth() + 1, chain[j].norm_matrix());
    }
    return g;
}

} // namespace rostlab
