#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rostlab/fq.hpp"

namespace rostlab {

class FieldElement;

/***
 * An iterated Laurent series field F_q((x1))...((xd)) together with the
 * class modulus M = l^n used for all unit-class computations, l a prime
 * different from char(F_q) with l^n | q-1, and a per-level precision
 * window.  Value type; copies share the immutable description.
 *
 * Elements are windowed Laurent polynomials: a nonzero element at depth
 * e stores its exact valuation v and at most precision[e-1] coefficients
 * (elements of the depth e-1 field) starting at x_e^v, leading
 * coefficient nonzero.  Addition and multiplication are exact whenever
 * the result fits its window and truncate above it; valuations,
 * residues, and unit classes are always exact.
 */
class TowerField {
public:
    TowerField(int q, int ell, int n, int depth, std::vector<int> precision);

    int q() const noexcept { return data_->k0->q(); }
    int ell() const noexcept { return data_->ell; }
    int n() const noexcept { return data_->n; }
    int depth() const noexcept { return data_->depth; }
    int class_modulus() const noexcept { return data_->M; }
    // Number of stored coefficients at level i, 1-based, i in 1..depth.
    int precision(int level) const;
    int top_precision() const { return precision(depth()); }
    const FqPtr& base() const noexcept { return data_->k0; }

    TowerField residue_field() const;  // drops the top level; DepthZero at depth 0
    TowerField with_base(int new_q) const;          // same shape over F_new_q
    TowerField with_top_precision(int coeffs) const;

    bool operator==(const TowerField& o) const;
    bool operator!=(const TowerField& o) const { return !(*this == o); }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement scalar(int enc) const;  // constant from a residue encoding
    FieldElement zeta() const;           // canonical primitive root, as a constant
    FieldElement uniformizer(int level) const;  // x_level, 1-based
    FieldElement from_residue(const FieldElement& low) const;  // constant lift
    FieldElement make(int val, std::vector<FieldElement> coeffs) const;
    // Monomial zeta^c0 * x1^c1 * ... * xd^cd from a class vector.
    FieldElement representative(const std::vector<int>& cls) const;

    std::string describe() const;

private:
    struct Data {
        FqPtr k0;
        int ell, n, M, depth;
        std::vector<int> precision;
    };
    std::shared_ptr<const Data> data_;
};

class FieldElement {
public:
    const TowerField& field() const noexcept { return fld_; }
    int depth() const noexcept { return fld_.depth(); }
    bool is_zero() const noexcept { return zero_; }
    bool is_one() const;

    int valuation() const;          // top-level; error on zero
    FieldElement unit_part() const; // x_d^-v * this
    FieldElement shifted(int k) const;
    FieldElement residue() const;   // image in the residue field; val >= 0 only
    FieldElement coeff(int j) const;  // coefficient of x_d^j, as a residue element
    int scalar_value() const;         // depth 0 only
    int coeff_count() const { return zero_ ? 0 : (int)ser_.size(); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inv() const;
    FieldElement pow(long long e) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // The l^j-th root of a unit with leading coefficient exactly 1.
    FieldElement nth_root_one_unit(long long e) const;
    // Rebuild with every depth-0 scalar passed through f.
    FieldElement map_scalars(const std::function<int(int)>& f) const;

    // Image in F^* / (F^*)^M on the basis (zeta, x1, ..., xd).
    std::vector<int> kummer_class() const;

    std::string str() const;

private:
    friend class TowerField;
    explicit FieldElement(TowerField f) : fld_(std::move(f)), zero_(true) {}

    TowerField fld_;
    bool zero_;
    int val_ = 0;     // top-level valuation (depth >= 1)
    int scalar_ = 0;  // depth 0 payload
    std::vector<FieldElement> ser_;  // coefficients, leading nonzero

    void normalize();
    static void require_same_field(const FieldElement& a, const FieldElement& b);
};

} // namespace rostlab
