#include "rostlab/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace rostlab {
namespace {

constexpr int kMaxQ = 65536;

std::vector<int> distinct_prime_factors(int n) {
    std::vector<int> out;
    for (int d = 2; (long long)d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense coefficient vectors over F_p, index = degree, trailing zeros trimmed.
using Poly = std::vector<int>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
}

Poly poly_sub(Poly a, const Poly& b, int p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] - b[i] % p + p) % p;
    trim(a);
    return a;
}

// Remainder of a by monic-after-scaling f.
Poly poly_mod(Poly a, const Poly& f, int p) {
    int lead = f.back();
    int lead_inv = 1;
    for (int e = 1; e < p - 1; ++e) lead_inv = lead_inv * lead % p;  // lead^(p-2)
    if (p == 2) lead_inv = 1;
    while (a.size() >= f.size()) {
        int c = a.back() * lead_inv % p;
        size_t shift = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i)
            a[shift + i] = (a[shift + i] - c * f[i] % p + p) % p;
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_powmod(const Poly& base, long long e, const Poly& f, int p) {
    Poly r{1};
    Poly b = poly_mod(base, f, p);
    while (e > 0) {
        if (e & 1) r = poly_mod(poly_mul(r, b, p), f, p);
        b = poly_mod(poly_mul(b, b, p), f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin test for a monic polynomial of degree m over F_p.
bool is_irreducible(const Poly& f, int p, int m) {
    Poly t{0, 1};
    long long pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    Poly x = poly_powmod(t, pm, f, p);
    if (poly_mod(poly_sub(x, t, p), f, p) != Poly{}) return false;
    for (int r : distinct_prime_factors(m)) {
        long long pk = 1;
        for (int i = 0; i < m / r; ++i) pk *= p;
        Poly y = poly_sub(poly_powmod(t, pk, f, p), t, p);
        Poly g = poly_gcd(f, y, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

FqField::FqField(int p, int m) : p_(p), m_(m) {
    q_ = 1;
    for (int i = 0; i < m; ++i) q_ *= p;

    // Canonical modulus: scan non-leading coefficient encodings upward.
    for (int low = 0; low < q_; ++low) {
        Poly f(m + 1, 0);
        f[m] = 1;
        int v = low;
        for (int i = 0; i < m; ++i) {
            f[i] = v % p;
            v /= p;
        }
        if (is_irreducible(f, p, m)) {
            modulus_ = f;
            break;
        }
    }
    check_internal(!modulus_.empty(), "no irreducible modulus found");

    // Canonical primitive element: smallest encoding of full order.
    auto raw_pow = [&](int a, long long e) {
        int r = from_int(1);
        int b = a;
        while (e > 0) {
            if (e & 1) r = raw_mul(r, b);
            b = raw_mul(b, b);
            e >>= 1;
        }
        return r;
    };
    std::vector<int> rs = distinct_prime_factors(q_ - 1);
    for (int z = 1; z < q_; ++z) {
        bool ok = true;
        for (int r : rs)
            if (raw_pow(z, (q_ - 1) / r) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            zeta_ = z;
            break;
        }
    }
    check_internal(zeta_ != 0, "no primitive element found");

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, -1);
    int cur = 1;
    for (int i = 0; i < q_ - 1; ++i) {
        exp_[i] = cur;
        log_[cur] = i;
        cur = raw_mul(cur, zeta_);
    }
    check_internal(cur == 1, "zeta order is not q-1");
}

int FqField::raw_mul(int a, int b) const {
    Poly da(m_), db(m_);
    for (int i = 0; i < m_; ++i, a /= p_) da[i] = a % p_;
    for (int i = 0; i < m_; ++i, b /= p_) db[i] = b % p_;
    trim(da);
    trim(db);
    Poly c = poly_mod(poly_mul(da, db, p_), modulus_, p_);
    int enc = 0;
    for (size_t i = c.size(); i-- > 0;) enc = enc * p_ + c[i];
    return enc;
}

int FqField::add(int a, int b) const {
    int enc = 0, mul = 1;
    for (int i = 0; i < m_; ++i, a /= p_, b /= p_, mul *= p_)
        enc += (a % p_ + b % p_) % p_ * mul;
    return enc;
}

int FqField::neg(int a) const {
    int enc = 0, mul = 1;
    for (int i = 0; i < m_; ++i, a /= p_, mul *= p_)
        enc += (p_ - a % p_) % p_ * mul;
    return enc;
}

int FqField::sub(int a, int b) const { return add(a, neg(b)); }

int FqField::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int FqField::inv(int a) const {
    if (a == 0) fail("DivisionByZero", "inverse of zero in F_" + std::to_string(q_));
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int FqField::div(int a, int b) const { return mul(a, inv(b)); }

int FqField::pow(int a, long long e) const {
    if (a == 0) {
        if (e > 0) return 0;
        if (e == 0) return from_int(1);
        fail("DivisionByZero", "negative power of zero");
    }
    long long r = ((e % (q_ - 1)) + (q_ - 1)) % (q_ - 1);
    return exp_[(long long)log_[a] * r % (q_ - 1)];
}

int FqField::dlog(int a) const {
    if (a == 0) fail("NotAUnit", "dlog of zero");
    return log_[a];
}

int FqField::from_int(long long k) const {
    return (int)(((k % p_) + p_) % p_);
}

bool FqField::is_square(int a) const {
    if (a == 0 || p_ == 2) return true;
    return log_[a] % 2 == 0;
}

FqPtr FqField::get(int q) {
    if (q < 2) fail("NotAPrimePower", std::to_string(q));
    if (q > kMaxQ) fail("FieldTooLarge", std::to_string(q) + " exceeds 65536");
    int p = 0;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;
    int m = 0, v = q;
    while (v % p == 0) {
        v /= p;
        ++m;
    }
    if (v != 1) fail("NotAPrimePower", std::to_string(q));

    static std::mutex mu;
    static std::map<int, FqPtr> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(q);
    if (it != registry.end()) return it->second;
    FqPtr f(new FqField(p, m));
    registry.emplace(q, f);
    return f;
}

FqEmbedding::FqEmbedding(FqPtr small, FqPtr big)
    : small_(std::move(small)), big_(std::move(big)) {
    if (small_->p() != big_->p() || big_->m() % small_->m() != 0)
        fail("FieldMismatch",
             "no embedding F_" + std::to_string(small_->q()) + " -> F_" +
                 std::to_string(big_->q()));

    // Smallest-encoding root of the small modulus in the big field.
    const auto& f = small_->modulus();
    root_ = -1;
    for (int a = 0; a < big_->q(); ++a) {
        int v = 0;
        for (size_t i = f.size(); i-- > 0;)
            v = big_->add(big_->mul(v, a), big_->from_int(f[i]));
        if (v == 0) {
            root_ = a;
            break;
        }
    }
    check_internal(root_ >= 0, "small modulus has no root in the big field");

    fwd_.resize(small_->q());
    for (int a = 0; a < small_->q(); ++a) {
        int v = 0, x = a;
        std::vector<int> digits(small_->m());
        for (int i = 0; i < small_->m(); ++i, x /= small_->p())
            digits[i] = x % small_->p();
        for (size_t i = digits.size(); i-- > 0;)
            v = big_->add(big_->mul(v, root_), big_->from_int(digits[i]));
        fwd_[a] = v;
        back_.emplace(v, a);
    }
    check_internal(back_.size() == (size_t)small_->q(), "embedding is not injective");
}

int FqEmbedding::embed(int a) const { return fwd_[a]; }

bool FqEmbedding::in_subfield(int A) const { return back_.count(A) != 0; }

int FqEmbedding::project(int A) const {
    auto it = back_.find(A);
    if (it == back_.end())
        fail("FieldMismatch", "element is not in the embedded subfield");
    return it->second;
}

int FqEmbedding::norm(int A) const {
    if (A == 0) return 0;
    long long e = (big_->q() - 1) / (small_->q() - 1);
    int v = big_->pow(A, e);
    check_internal(in_subfield(v), "norm landed outside the subfield");
    return project(v);
}

FqEmbPtr FqEmbedding::get(int q_small, int q_big) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, FqEmbPtr> registry;
    FqPtr s = FqField::get(q_small);
    FqPtr b = FqField::get(q_big);
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(q_small, q_big);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    FqEmbPtr e(new FqEmbedding(s, b));
    registry.emplace(key, e);
    return e;
}

} // namespace rostlab
