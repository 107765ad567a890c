#include "rostlab/tower.hpp"

#include <algorithm>
#include <sstream>

namespace rostlab {
namespace {

bool is_prime(int x) {
    if (x < 2) return false;
    for (int d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

int mod_pos(long long x, int M) { return (int)(((x % M) + M) % M); }

} // namespace

TowerField::TowerField(int q, int ell, int n, int depth, std::vector<int> precision) {
    FqPtr k0 = FqField::get(q);
    if (!is_prime(ell)) fail("PreconditionViolated", "l must be prime");
    if (ell == k0->p()) fail("BadCharacteristic", "l equals the residue characteristic");
    if (n < 1) fail("PreconditionViolated", "n must be at least 1");
    long long M = 1;
    for (int i = 0; i < n; ++i) {
        M *= ell;
        if (M > q - 1) fail("RootsOfUnityMissing", "l^n exceeds q-1");
    }
    if ((q - 1) % M != 0)
        fail("RootsOfUnityMissing", "l^n does not divide q-1");
    if (depth < 0 || depth > 3) fail("DepthUnsupported", "depth must be 0..3");
    if ((int)precision.size() != depth)
        fail("PreconditionViolated", "precision list must have one entry per level");
    for (int p : precision)
        if (p < 1) fail("PreconditionViolated", "precision must be positive");

    auto d = std::make_shared<Data>();
    d->k0 = std::move(k0);
    d->ell = ell;
    d->n = n;
    d->M = (int)M;
    d->depth = depth;
    d->precision = std::move(precision);
    data_ = std::move(d);
}

int TowerField::precision(int level) const {
    if (level < 1 || level > depth())
        fail("PreconditionViolated", "no such level");
    return data_->precision[level - 1];
}

TowerField TowerField::residue_field() const {
    if (depth() == 0) fail("DepthZero", "the depth-0 field has no residue field");
    std::vector<int> prec(data_->precision.begin(), data_->precision.end() - 1);
    return TowerField(q(), ell(), n(), depth() - 1, std::move(prec));
}

TowerField TowerField::with_base(int new_q) const {
    return TowerField(new_q, ell(), n(), depth(), data_->precision);
}

TowerField TowerField::with_top_precision(int coeffs) const {
    std::vector<int> prec = data_->precision;
    if (prec.empty()) fail("DepthZero", "no levels to adjust");
    prec.back() = coeffs;
    return TowerField(q(), ell(), n(), depth(), std::move(prec));
}

bool TowerField::operator==(const TowerField& o) const {
    return q() == o.q() && ell() == o.ell() && n() == o.n() &&
           depth() == o.depth() && data_->precision == o.data_->precision;
}

FieldElement TowerField::zero() const { return FieldElement(*this); }

FieldElement TowerField::scalar(int enc) const {
    FieldElement e(*this);
    if (enc < 0 || enc >= q()) fail("PreconditionViolated", "scalar encoding out of range");
    if (enc == 0) return e;
    e.zero_ = false;
    if (depth() == 0) {
        e.scalar_ = enc;
    } else {
        e.val_ = 0;
        e.ser_.push_back(residue_field().scalar(enc));
    }
    return e;
}

FieldElement TowerField::one() const { return scalar(base()->from_int(1)); }

FieldElement TowerField::zeta() const { return scalar(base()->zeta()); }

FieldElement TowerField::uniformizer(int level) const {
    if (level < 1 || level > depth())
        fail("PreconditionViolated", "no such level");
    if (level == depth()) {
        FieldElement e(*this);
        e.zero_ = false;
        e.val_ = 1;
        e.ser_.push_back(residue_field().one());
        return e;
    }
    return from_residue(residue_field().uniformizer(level));
}

FieldElement TowerField::from_residue(const FieldElement& low) const {
    if (depth() == 0) fail("DepthZero", "no residue field to lift from");
    if (low.field() != residue_field())
        fail("FieldMismatch", "constant lift from the wrong field");
    FieldElement e(*this);
    if (low.is_zero()) return e;
    e.zero_ = false;
    e.val_ = 0;
    e.ser_.push_back(low);
    return e;
}

FieldElement TowerField::make(int val, std::vector<FieldElement> coeffs) const {
    if (depth() == 0) fail("DepthZero", "depth-0 elements have no coefficients");
    TowerField low = residue_field();
    for (const auto& c : coeffs)
        if (c.field() != low) fail("FieldMismatch", "coefficient from the wrong field");
    FieldElement e(*this);
    e.zero_ = false;
    e.val_ = val;
    e.ser_ = std::move(coeffs);
    e.normalize();
    return e;
}

FieldElement TowerField::representative(const std::vector<int>& cls) const {
    if ((int)cls.size() != depth() + 1)
        fail("PreconditionViolated", "class vector has wrong length");
    int M = class_modulus();
    FieldElement r = zeta().pow(mod_pos(cls[0], M));
    for (int i = 1; i <= depth(); ++i)
        r = r * uniformizer(i).pow(mod_pos(cls[i], M));
    return r;
}

std::string TowerField::describe() const {
    std::ostringstream os;
    os << "F_" << q();
    for (int i = 1; i <= depth(); ++i) os << "((x" << i << "))";
    os << " mod " << ell() << "^" << n();
    return os.str();
}

void FieldElement::normalize() {
    if (zero_) return;
    if (depth() == 0) {
        zero_ = scalar_ == 0;
        return;
    }
    size_t lead = 0;
    while (lead < ser_.size() && ser_[lead].is_zero()) ++lead;
    if (lead > 0) {
        ser_.erase(ser_.begin(), ser_.begin() + lead);
        val_ += (int)lead;
    }
    size_t N = (size_t)fld_.top_precision();
    if (ser_.size() > N) ser_.resize(N, fld_.residue_field().zero());
    while (!ser_.empty() && ser_.back().is_zero()) ser_.pop_back();
    if (ser_.empty()) {
        zero_ = true;
        val_ = 0;
    }
}

void FieldElement::require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.fld_ != b.fld_)
        fail("FieldMismatch", "operands live in different fields");
}

bool FieldElement::is_one() const {
    if (zero_) return false;
    if (depth() == 0) return scalar_ == fld_.base()->from_int(1);
    return val_ == 0 && ser_.size() == 1 && ser_[0].is_one();
}

int FieldElement::valuation() const {
    if (zero_) fail("PreconditionViolated", "valuation of zero");
    return depth() == 0 ? 0 : val_;
}

FieldElement FieldElement::shifted(int k) const {
    if (depth() == 0) fail("DepthZero", "depth-0 elements have no uniformizer");
    if (zero_) return *this;
    FieldElement e = *this;
    e.val_ += k;
    return e;
}

FieldElement FieldElement::unit_part() const { return shifted(-valuation()); }

FieldElement FieldElement::residue() const {
    TowerField low = fld_.residue_field();
    if (zero_) return low.zero();
    if (val_ < 0) fail("PreconditionViolated", "residue of a non-integral element");
    return val_ > 0 ? low.zero() : ser_[0];
}

FieldElement FieldElement::coeff(int j) const {
    TowerField low = fld_.residue_field();
    if (zero_ || j < val_ || j >= val_ + (int)ser_.size()) return low.zero();
    return ser_[j - val_];
}

int FieldElement::scalar_value() const {
    if (depth() != 0) fail("PreconditionViolated", "not a depth-0 element");
    return zero_ ? 0 : scalar_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(*this, o);
    if (zero_) return o;
    if (o.zero_) return *this;
    FieldElement e(fld_);
    e.zero_ = false;
    if (depth() == 0) {
        e.scalar_ = fld_.base()->add(scalar_, o.scalar_);
        e.normalize();
        return e;
    }
    int v = std::min(val_, o.val_);
    int end = std::max(val_ + (int)ser_.size(), o.val_ + (int)o.ser_.size());
    e.val_ = v;
    e.ser_.assign(end - v, fld_.residue_field().zero());
    for (size_t i = 0; i < ser_.size(); ++i)
        e.ser_[val_ - v + i] = e.ser_[val_ - v + i] + ser_[i];
    for (size_t i = 0; i < o.ser_.size(); ++i)
        e.ser_[o.val_ - v + i] = e.ser_[o.val_ - v + i] + o.ser_[i];
    e.normalize();
    return e;
}

FieldElement FieldElement::operator-() const {
    FieldElement e = *this;
    if (zero_) return e;
    if (depth() == 0) {
        e.scalar_ = fld_.base()->neg(scalar_);
        return e;
    }
    for (auto& c : e.ser_) c = -c;
    return e;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(*this, o);
    if (zero_ || o.zero_) return fld_.zero();
    FieldElement e(fld_);
    e.zero_ = false;
    if (depth() == 0) {
        e.scalar_ = fld_.base()->mul(scalar_, o.scalar_);
        e.normalize();
        return e;
    }
    int N = fld_.top_precision();
    int la = (int)ser_.size(), lb = (int)o.ser_.size();
    int len = std::min(la + lb - 1, N);
    e.val_ = val_ + o.val_;
    e.ser_.assign(len, fld_.residue_field().zero());
    for (int i = 0; i < la; ++i)
        for (int j = 0; j < lb && i + j < len; ++j)
            e.ser_[i + j] = e.ser_[i + j] + ser_[i] * o.ser_[j];
    e.normalize();
    return e;
}

FieldElement FieldElement::inv() const {
    if (zero_) fail("DivisionByZero", "inverse of zero");
    if (depth() == 0) {
        FieldElement e(fld_);
        e.zero_ = false;
        e.scalar_ = fld_.base()->inv(scalar_);
        return e;
    }
    // Series back-substitution on the unit part.
    int N = fld_.top_precision();
    TowerField low = fld_.residue_field();
    std::vector<FieldElement> z;
    z.reserve(N);
    FieldElement z0 = ser_[0].inv();
    z.push_back(z0);
    for (int k = 1; k < N; ++k) {
        FieldElement s = low.zero();
        for (int i = 1; i <= k && i < (int)ser_.size(); ++i)
            s = s + ser_[i] * z[k - i];
        z.push_back(-(z0 * s));
    }
    return fld_.make(-val_, std::move(z));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::pow(long long e) const {
    if (zero_) {
        if (e > 0) return *this;
        if (e == 0) return fld_.one();
        fail("DivisionByZero", "negative power of zero");
    }
    FieldElement base = e < 0 ? inv() : *this;
    unsigned long long k = e < 0 ? -(unsigned long long)e : (unsigned long long)e;
    FieldElement r = fld_.one();
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
    require_same_field(*this, o);
    if (zero_ != o.zero_) return false;
    if (zero_) return true;
    if (depth() == 0) return scalar_ == o.scalar_;
    if (val_ != o.val_ || ser_.size() != o.ser_.size()) return false;
    for (size_t i = 0; i < ser_.size(); ++i)
        if (ser_[i] != o.ser_[i]) return false;
    return true;
}

FieldElement FieldElement::nth_root_one_unit(long long e) const {
    if (depth() == 0) {
        if (!is_one()) fail("PreconditionViolated", "root of a non-one constant");
        return *this;
    }
    if (zero_ || val_ != 0 || !ser_[0].is_one())
        fail("PreconditionViolated", "leading coefficient must be exactly 1");
    int N = fld_.top_precision();
    int ec = fld_.base()->from_int(e);
    if (ec == 0) fail("PreconditionViolated", "root degree divides the characteristic");
    FieldElement einv = fld_.scalar(ec).inv();

    FieldElement z = fld_.one();
    for (int k = 1; k < N; ++k) {
        FieldElement want = coeff(k);
        FieldElement have = z.pow(e).coeff(k);
        FieldElement delta = fld_.from_residue(want - have) * einv;
        z = z + delta.shifted(k);
    }
    check_internal(z.pow(e) == *this, "root iteration failed to converge");
    return z;
}

FieldElement FieldElement::map_scalars(const std::function<int(int)>& f) const {
    if (zero_) return *this;
    if (depth() == 0) {
        FieldElement e(fld_);
        e.zero_ = false;
        e.scalar_ = f(scalar_);
        e.normalize();
        return e;
    }
    std::vector<FieldElement> coeffs;
    coeffs.reserve(ser_.size());
    for (const auto& c : ser_) coeffs.push_back(c.map_scalars(f));
    return fld_.make(val_, std::move(coeffs));
}

std::vector<int> FieldElement::kummer_class() const {
    if (zero_) fail("NotAUnit", "class of zero");
    int M = fld_.class_modulus();
    if (depth() == 0) return {fld_.base()->dlog(scalar_) % M};
    std::vector<int> cls = ser_[0].kummer_class();
    cls.push_back(mod_pos(val_, M));
    return cls;
}

std::string FieldElement::str() const {
    if (zero_) return "0";
    if (depth() == 0) return std::to_string(scalar_);
    std::string var = "x" + std::to_string(depth());
    std::ostringstream os;
    for (size_t i = 0; i < ser_.size(); ++i) {
        if (ser_[i].is_zero()) continue;
        if (os.tellp() > 0) os << " + ";
        int expo = val_ + (int)i;
        std::string c = ser_[i].str();
        bool composite = c.find(' ') != std::string::npos;
        if (expo == 0) {
            os << (composite ? "(" + c + ")" : c);
            continue;
        }
        if (!ser_[i].is_one()) os << (composite ? "(" + c + ")" : c) << "*";
        os << var;
        if (expo != 1) os << "^" << expo;
    }
    return os.str();
}

} // namespace rostlab
