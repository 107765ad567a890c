#include "rostlab/cohomology.hpp"

#include <algorithm>
#include <sstream>

namespace rostlab {
namespace {

int mod_pos(long long x, int M) { return (int)(((x % M) + M) % M); }

// dlog of -1 in the coefficient ring Z/M; always 2-torsion.
int dlog_minus_one(const TowerField& F) {
    const auto& k0 = F.base();
    int m1 = k0->neg(k0->from_int(1));
    return k0->dlog(m1) % F.class_modulus();
}

} // namespace

CohClass::CohClass(TowerField F, int degree) : fld_(std::move(F)), degree_(degree) {
    if (degree < 0 || degree > 4) fail("DegreeUnsupported", "degree must be 0..4");
}

void CohClass::add_term(std::vector<int> slots, long long coeff) {
    int M = fld_.class_modulus();
    coeff = mod_pos(coeff, M);
    if (coeff == 0) return;
    int e1 = dlog_minus_one(fld_);

    // Normal form: sort slots with a sign per swap, kill double zeta
    // slots, rewrite repeated uniformizers through dlog(-1).
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < slots.size(); ++i)
            if (slots[i] > slots[i + 1]) {
                std::swap(slots[i], slots[i + 1]);
                coeff = mod_pos(-coeff, M);
                changed = true;
            }
        if (changed) continue;
        for (size_t i = 0; i + 1 < slots.size(); ++i) {
            if (slots[i] != slots[i + 1]) continue;
            if (slots[i] == 0) return;  // zeta cup zeta dies in H^2 of a finite field
            slots[i] = 0;
            coeff = mod_pos(coeff * e1, M);
            changed = true;
            break;
        }
        if (coeff == 0) return;
    }

    unsigned key = 0;
    for (int s : slots) key |= 1u << s;
    int& slot = terms_[key];
    slot = mod_pos(slot + coeff, M);
    if (slot == 0) terms_.erase(key);
}

CohClass CohClass::symbol(const TowerField& F,
                          const std::vector<std::vector<int>>& entries) {
    int m = (int)entries.size();
    CohClass out(F, m);
    int d = F.depth();
    for (const auto& e : entries)
        if ((int)e.size() != d + 1)
            fail("PreconditionViolated", "symbol entry has wrong length");
    if (m == 0) {
        out.terms_[0] = 1 % F.class_modulus();
        if (out.terms_[0] == 0) out.terms_.clear();
        return out;
    }

    // Multilinear expansion over the slot basis.
    std::vector<int> pick(m, 0);
    while (true) {
        long long coeff = 1;
        for (int i = 0; i < m; ++i) coeff *= entries[i][pick[i]];
        if (coeff % F.class_modulus() != 0) {
            std::vector<int> slots(pick.begin(), pick.end());
            out.add_term(std::move(slots), coeff);
        }
        int i = 0;
        for (; i < m; ++i) {
            if (++pick[i] <= d) break;
            pick[i] = 0;
        }
        if (i == m) break;
    }
    return out;
}

CohClass CohClass::symbol(const std::vector<FieldElement>& entries) {
    if (entries.empty()) fail("PreconditionViolated", "empty symbol");
    const TowerField& F = entries[0].field();
    std::vector<std::vector<int>> cls;
    for (const auto& e : entries) {
        if (e.field() != F) fail("FieldMismatch", "symbol entries from different fields");
        cls.push_back(e.kummer_class());
    }
    return symbol(F, cls);
}

CohClass CohClass::operator+(const CohClass& o) const {
    if (fld_ != o.fld_ || degree_ != o.degree_)
        fail("FieldMismatch", "cohomology classes of different shapes");
    CohClass out = *this;
    int M = fld_.class_modulus();
    for (const auto& [k, c] : o.terms_) {
        int& slot = out.terms_[k];
        slot = mod_pos(slot + c, M);
        if (slot == 0) out.terms_.erase(k);
    }
    return out;
}

CohClass CohClass::scaled(int c) const {
    CohClass out(fld_, degree_);
    int M = fld_.class_modulus();
    for (const auto& [k, v] : terms_) {
        int x = mod_pos((long long)v * c, M);
        if (x != 0) out.terms_[k] = x;
    }
    return out;
}

CohClass CohClass::operator-(const CohClass& o) const { return *this + o.scaled(-1); }

bool CohClass::operator==(const CohClass& o) const {
    if (fld_ != o.fld_ || degree_ != o.degree_)
        fail("FieldMismatch", "cohomology classes of different shapes");
    return terms_ == o.terms_;
}

CohClass CohClass::cup(const std::vector<int>& cls) const {
    if ((int)cls.size() != fld_.depth() + 1)
        fail("PreconditionViolated", "class vector has wrong length");
    CohClass out(fld_, degree_ + 1);
    for (const auto& [key, c] : terms_) {
        std::vector<int> base;
        for (int s = 0; s <= fld_.depth(); ++s)
            if (key & (1u << s)) base.push_back(s);
        for (int s = 0; s <= fld_.depth(); ++s) {
            if (cls[s] % fld_.class_modulus() == 0) continue;
            std::vector<int> slots = base;
            slots.push_back(s);
            out.add_term(std::move(slots), (long long)c * cls[s]);
        }
    }
    return out;
}

CohClass CohClass::residue() const {
    TowerField low = fld_.residue_field();
    if (degree_ == 0) fail("DegreeUnsupported", "no residue in degree 0");
    CohClass out(low, degree_ - 1);
    unsigned top = 1u << fld_.depth();
    for (const auto& [key, c] : terms_)
        if (key & top) out.terms_[key & ~top] = c;
    return out;
}

CohClass CohClass::inflate(const CohClass& low, const TowerField& F) {
    if (low.field() != F.residue_field())
        fail("FieldMismatch", "inflation from the wrong field");
    CohClass out(F, low.degree());
    out.terms_ = low.terms_;
    return out;
}

std::pair<CohClass, CohClass> CohClass::decompose() const {
    TowerField low = fld_.residue_field();
    CohClass unram(low, degree_);
    unsigned top = 1u << fld_.depth();
    for (const auto& [key, c] : terms_)
        if (!(key & top)) unram.terms_[key] = c;
    return {unram, residue()};
}

std::vector<unsigned> CohClass::basis_keys(int depth, int degree) {
    std::vector<unsigned> keys;
    for (unsigned key = 0; key < (1u << (depth + 1)); ++key)
        if (__builtin_popcount(key) == degree) keys.push_back(key);
    return keys;
}

std::vector<int> CohClass::coeff_vector() const {
    std::vector<int> out;
    for (unsigned key : basis_keys(fld_.depth(), degree_)) {
        auto it = terms_.find(key);
        out.push_back(it == terms_.end() ? 0 : it->second);
    }
    return out;
}

CohClass CohClass::from_coeff_vector(const TowerField& F, int degree,
                                     const std::vector<int>& coeffs) {
    auto keys = basis_keys(F.depth(), degree);
    if (keys.size() != coeffs.size())
        fail("PreconditionViolated", "coefficient vector has wrong length");
    CohClass out(F, degree);
    int M = F.class_modulus();
    for (size_t i = 0; i < keys.size(); ++i) {
        int c = mod_pos(coeffs[i], M);
        if (c != 0) out.terms_[keys[i]] = c;
    }
    return out;
}

std::vector<int> CohClass::as_class_vector() const {
    if (degree_ != 1) fail("DegreeUnsupported", "not a degree-1 class");
    std::vector<int> v(fld_.depth() + 1, 0);
    for (const auto& [key, c] : terms_)
        for (int s = 0; s <= fld_.depth(); ++s)
            if (key == (1u << s)) v[s] = c;
    return v;
}

std::string CohClass::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (c != 1 || key == 0) os << c << "*";
        os << "{";
        bool inner = true;
        for (int s = 0; s <= fld_.depth(); ++s)
            if (key & (1u << s)) {
                if (!inner) os << ",";
                inner = false;
                os << (s == 0 ? std::string("z") : "x" + std::to_string(s));
            }
        os << "}";
    }
    return os.str();
}

bool is_ramification_compatible(const CohClass& alpha, const FieldElement& lambda) {
    const TowerField& F = alpha.field();
    if (lambda.field() != F) fail("FieldMismatch", "lambda from the wrong field");
    if (lambda.is_zero()) fail("NotAUnit", "lambda must be nonzero");

    bool route1 = alpha.cup(lambda.kummer_class()).residue().is_zero();

    int r = lambda.valuation();
    CohClass w = alpha.residue();
    CohClass lifted = CohClass::inflate(w, F);
    FieldElement signed_lambda = r % 2 == 0 ? lambda : -lambda;
    CohClass rhs = lifted.cup(signed_lambda.kummer_class());
    bool route2 = alpha.scaled(r) == rhs;

    check_internal(route1 == route2, "ramification routes disagree");
    return route1;
}

} // namespace rostlab
