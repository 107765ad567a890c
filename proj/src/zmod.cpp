#include "rostlab/zmod.hpp"

#include <algorithm>
#include <string>

namespace rostlab {
namespace {

int mod_pos(long long x, int M) { return (int)(((x % M) + M) % M); }

// Inverse of a unit mod M by extended Euclid.
int inv_mod(int a, int M) {
    int old_r = a, r = M, old_s = 1, s = 0;
    while (r != 0) {
        int qt = old_r / r;
        int tr = old_r - qt * r;
        old_r = r;
        r = tr;
        int ts = old_s - qt * s;
        old_s = s;
        s = ts;
    }
    if (old_r != 1 && old_r != -1)
        fail("DivisionByZero", std::to_string(a) + " is not a unit mod " + std::to_string(M));
    if (old_r == -1) old_s = -old_s;
    return mod_pos(old_s, M);
}

void factor_prime_power(int M, int& l, int& n) {
    if (M < 2) fail("PreconditionViolated", "modulus must be at least 2");
    l = 0;
    for (int d = 2; d * d <= M; ++d)
        if (M % d == 0) {
            l = d;
            break;
        }
    if (l == 0) l = M;
    n = 0;
    int v = M;
    while (v % l == 0) {
        v /= l;
        ++n;
    }
    if (v != 1) fail("PreconditionViolated", "modulus is not a prime power");
}

// l-adic valuation in [0, n]; zero gets n.
int val_l(int x, int l, int n) {
    if (x == 0) return n;
    int a = 0;
    while (x % l == 0) {
        x /= l;
        ++a;
    }
    return std::min(a, n);
}

} // namespace

Subgroup::Subgroup(int modulus, int rank) : M_(modulus), r_(rank) {
    if (rank < 0) fail("PreconditionViolated", "negative rank");
    factor_prime_power(M_, l_, n_);
}

void Subgroup::canonicalize(std::vector<std::vector<int>> pool) {
    for (auto& row : pool) {
        if ((int)row.size() != r_)
            fail("PreconditionViolated", "generator has wrong length");
        for (auto& x : row) x = mod_pos(x, M_);
    }
    rows_.clear();
    pivcol_.clear();
    pivval_.clear();

    for (int col = 0; col < r_; ++col) {
        int best = -1, best_val = n_;
        for (size_t i = 0; i < pool.size(); ++i) {
            int v = val_l(pool[i][col], l_, n_);
            if (v < best_val) {
                best_val = v;
                best = (int)i;
            }
        }
        if (best < 0) continue;

        std::vector<int> piv = pool[best];
        pool.erase(pool.begin() + best);

        // Scale so the pivot entry is exactly l^a.
        int la = 1;
        for (int i = 0; i < best_val; ++i) la *= l_;
        int unit = piv[col] / la;
        int ui = inv_mod(unit, M_);
        for (auto& x : piv) x = mod_pos((long long)x * ui, M_);

        for (auto& row : pool) {
            int c = row[col] / la;
            if (row[col] % la != 0)
                fail("InternalVerificationFailed", "pivot was not minimal");
            if (c != 0)
                for (int j = 0; j < r_; ++j)
                    row[j] = mod_pos(row[j] - (long long)c * piv[j], M_);
        }

        // Annihilator shadow keeps the span closed for later columns.
        int shadow_scale = M_ / la;
        std::vector<int> shadow(r_);
        bool nonzero = false;
        for (int j = 0; j < r_; ++j) {
            shadow[j] = mod_pos((long long)shadow_scale * piv[j], M_);
            nonzero |= shadow[j] != 0;
        }
        if (nonzero) pool.push_back(std::move(shadow));

        rows_.push_back(std::move(piv));
        pivcol_.push_back(col);
        pivval_.push_back(la);
    }

    for (const auto& row : pool)
        for (int x : row)
            check_internal(x == 0, "leftover generator after echelon pass");

    // Reduce entries above each pivot modulo the pivot value.
    for (size_t i = 0; i < rows_.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            int e = rows_[j][pivcol_[i]];
            int t = e / pivval_[i];
            if (t != 0)
                for (int c = 0; c < r_; ++c)
                    rows_[j][c] = mod_pos(rows_[j][c] - (long long)t * rows_[i][c], M_);
        }
}

Subgroup Subgroup::span(int modulus, int rank,
                        const std::vector<std::vector<int>>& gens) {
    Subgroup s(modulus, rank);
    s.canonicalize(gens);
    return s;
}

Subgroup Subgroup::full(int modulus, int rank) {
    std::vector<std::vector<int>> gens(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i) gens[i][i] = 1;
    return span(modulus, rank, gens);
}

Subgroup Subgroup::left_kernel(int modulus, int ncols,
                               const std::vector<std::vector<int>>& A) {
    int k = (int)A.size();
    Subgroup aug(modulus, ncols + k);

    // Echelon over the A-columns of [A | I]; rows whose A-part dies
    // leave their tags as kernel generators.  The annihilator shadows
    // produced along the way carry the torsion kernel elements.
    std::vector<std::vector<int>> rows(k);
    for (int i = 0; i < k; ++i) {
        if ((int)A[i].size() != ncols)
            fail("PreconditionViolated", "matrix row has wrong length");
        rows[i] = A[i];
        rows[i].resize(ncols + k, 0);
        rows[i][ncols + i] = 1;
    }
    aug.canonicalize(rows);

    std::vector<std::vector<int>> tags;
    for (size_t i = 0; i < aug.rows_.size(); ++i) {
        if (aug.pivcol_[i] < ncols) {
            // Pivot in the A-part: its annihilator shadow may not have
            // been representable; re-add it explicitly for safety.
            int s = modulus / aug.pivval_[i];
            std::vector<int> t(k);
            bool a_zero = true;
            for (int c = 0; c < ncols; ++c)
                if (mod_pos((long long)s * aug.rows_[i][c], modulus) != 0) a_zero = false;
            if (!a_zero) continue;
            for (int c = 0; c < k; ++c)
                t[c] = mod_pos((long long)s * aug.rows_[i][ncols + c], modulus);
            tags.push_back(std::move(t));
        } else {
            std::vector<int> t(aug.rows_[i].begin() + ncols, aug.rows_[i].end());
            tags.push_back(std::move(t));
        }
    }
    return span(modulus, k, tags);
}

bool Subgroup::contains(const std::vector<int>& v) const {
    if ((int)v.size() != r_) fail("PreconditionViolated", "vector has wrong length");
    std::vector<int> w(v);
    for (auto& x : w) x = mod_pos(x, M_);
    for (size_t i = 0; i < rows_.size(); ++i) {
        int e = w[pivcol_[i]];
        if (e % pivval_[i] != 0) return false;
        int c = e / pivval_[i];
        if (c != 0)
            for (int j = 0; j < r_; ++j)
                w[j] = mod_pos(w[j] - (long long)c * rows_[i][j], M_);
    }
    for (int x : w)
        if (x != 0) return false;
    return true;
}

bool Subgroup::contains(const Subgroup& other) const {
    if (other.M_ != M_ || other.r_ != r_)
        fail("PreconditionViolated", "subgroups live in different ambient groups");
    for (const auto& row : other.rows_)
        if (!contains(row)) return false;
    return true;
}

bool Subgroup::operator==(const Subgroup& o) const {
    return M_ == o.M_ && r_ == o.r_ && rows_ == o.rows_;
}

unsigned long long Subgroup::order() const {
    unsigned long long n = 1;
    for (int pv : pivval_) n *= (unsigned long long)(M_ / pv);
    return n;
}

std::vector<std::vector<int>> Subgroup::elements() const {
    if (order() > 1u << 20)
        fail("PreconditionViolated", "subgroup too large to enumerate");
    std::vector<std::vector<int>> out;
    std::vector<int> counter(rows_.size(), 0);
    while (true) {
        std::vector<int> v(r_, 0);
        for (size_t i = 0; i < rows_.size(); ++i)
            for (int j = 0; j < r_; ++j)
                v[j] = mod_pos(v[j] + (long long)counter[i] * rows_[i][j], M_);
        out.push_back(std::move(v));
        size_t i = 0;
        for (; i < rows_.size(); ++i) {
            if (++counter[i] < M_ / pivval_[i]) break;
            counter[i] = 0;
        }
        if (i == rows_.size()) break;
    }
    return out;
}

Subgroup Subgroup::meet(const Subgroup& other) const {
    if (other.M_ != M_ || other.r_ != r_)
        fail("PreconditionViolated", "subgroups live in different ambient groups");
    std::vector<std::vector<int>> stacked = rows_;
    for (const auto& row : other.rows_) {
        std::vector<int> neg(r_);
        for (int j = 0; j < r_; ++j) neg[j] = mod_pos(-row[j], M_);
        stacked.push_back(std::move(neg));
    }
    Subgroup ker = left_kernel(M_, r_, stacked);

    std::vector<std::vector<int>> gens;
    for (const auto& x : ker.rows()) {
        std::vector<int> v(r_, 0);
        for (size_t i = 0; i < rows_.size(); ++i)
            for (int j = 0; j < r_; ++j)
                v[j] = mod_pos(v[j] + (long long)x[i] * rows_[i][j], M_);
        gens.push_back(std::move(v));
    }
    return span(M_, r_, gens);
}

Subgroup Subgroup::join(const Subgroup& other) const {
    if (other.M_ != M_ || other.r_ != r_)
        fail("PreconditionViolated", "subgroups live in different ambient groups");
    std::vector<std::vector<int>> gens = rows_;
    gens.insert(gens.end(), other.rows_.begin(), other.rows_.end());
    return span(M_, r_, gens);
}

Subgroup Subgroup::scaled(int c) const {
    std::vector<std::vector<int>> gens = rows_;
    for (auto& row : gens)
        for (auto& x : row) x = mod_pos((long long)c * x, M_);
    return span(M_, r_, gens);
}

Subgroup Subgroup::image(int new_rank, const std::vector<std::vector<int>>& T) const {
    if ((int)T.size() != r_) fail("PreconditionViolated", "map has wrong domain rank");
    std::vector<std::vector<int>> gens;
    for (const auto& row : rows_) {
        std::vector<int> v(new_rank, 0);
        for (int i = 0; i < r_; ++i) {
            if ((int)T[i].size() != new_rank)
                fail("PreconditionViolated", "map row has wrong length");
            for (int j = 0; j < new_rank; ++j)
                v[j] = mod_pos(v[j] + (long long)row[i] * T[i][j], M_);
        }
        gens.push_back(std::move(v));
    }
    return span(M_, new_rank, gens);
}

} // namespace rostlab
