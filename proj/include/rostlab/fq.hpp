#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "rostlab/error.hpp"

namespace rostlab {

/***
 * Arithmetic in F_q, q = p^m <= 65536.
 *
 * Elements are integers in [0, q): the polynomial sum c_i t^i with
 * 0 <= c_i < p is encoded as sum c_i p^i, where t is a root of the
 * canonical modulus (the monic irreducible of degree m whose
 * non-leading coefficient vector has the smallest encoding).
 * Multiplication runs on discrete-log tables built from the canonical
 * primitive element zeta (the unit of smallest encoding with
 * multiplicative order q-1).
 */
class FqField {
public:
    static std::shared_ptr<const FqField> get(int q);

    int p() const noexcept { return p_; }
    int m() const noexcept { return m_; }
    int q() const noexcept { return q_; }
    int zeta() const noexcept { return zeta_; }
    // Monic, degree m, coefficient i at index i (size m+1, last entry 1).
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;  // DivisionByZero on 0
    int div(int a, int b) const;
    int pow(int a, long long e) const;  // DivisionByZero on 0^negative
    int dlog(int a) const;              // base zeta; NotAUnit on 0
    int from_int(long long k) const;
    int frobenius(int a) const { return pow(a, p_); }
    bool is_square(int a) const;

private:
    FqField(int p, int m);
    int raw_mul(int a, int b) const;  // table-free; used while building tables

    int p_, m_, q_;
    std::vector<int> modulus_;
    std::vector<int> exp_, log_;
    int zeta_ = 0;
};

using FqPtr = std::shared_ptr<const FqField>;

/***
 * The canonical embedding F_q -> F_Q for q = p^a, Q = p^b with a | b:
 * the generator of F_q maps to the root of the small modulus that has
 * the smallest encoding in F_Q.  Carries the norm N_{F_Q/F_q} and the
 * partial inverse of the embedding.
 */
class FqEmbedding {
public:
    static std::shared_ptr<const FqEmbedding> get(int q_small, int q_big);

    const FqPtr& small() const noexcept { return small_; }
    const FqPtr& big() const noexcept { return big_; }
    int root() const noexcept { return root_; }

    int embed(int a) const;
    bool in_subfield(int A) const;
    int project(int A) const;  // FieldMismatch if A is not in the image
    int norm(int A) const;     // N_{F_Q/F_q}(A) as a small-field encoding

private:
    FqEmbedding(FqPtr small, FqPtr big);

    FqPtr small_, big_;
    int root_ = 0;
    std::vector<int> fwd_;
    std::unordered_map<int, int> back_;
};

using FqEmbPtr = std::shared_ptr<const FqEmbedding>;

} // namespace rostlab
