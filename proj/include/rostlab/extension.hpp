#pragma once

#include <vector>

#include "rostlab/cohomology.hpp"
#include "rostlab/zmod.hpp"

namespace rostlab {

/***
 * A cyclic extension E/F of an iterated Laurent series field, in one of
 * two shapes:
 *
 *  - unramified of degree f: the residue field grows to F_{q^f}; the
 *    extension tower is materialized when q^f fits the field-size cap,
 *    and the class formulas stay available either way;
 *
 *  - Kummer of degree l^m at a level i: generated by T with
 *    T^(l^m) = b_norm, where b_norm is the canonical monomial
 *    zeta^u0 x1^u1 ... x_{i-1}^u_{i-1} x_i obtained from the unit class
 *    of the requested radicand.  The substitution x_i = T^(l^m) / mono
 *    is exact on monomials, so embeddings, conjugates, and norms are
 *    exact elementwise.
 *
 * A radicand whose class is concentrated on zeta falls back to the
 * unramified shape; a class whose top uniformizer coordinate is not
 * coprime to l has no single-level presentation and is rejected.
 */
class CyclicExtension {
public:
    enum class Kind { Unramified, Kummer };

    static CyclicExtension make_unramified(const TowerField& F, int f);
    static CyclicExtension make_kummer(const TowerField& F, const FieldElement& b,
                                       int m);

    Kind kind() const noexcept { return kind_; }
    int degree() const noexcept { return degree_; }
    const TowerField& base() const noexcept { return base_; }
    bool materialized() const noexcept { return materialized_; }
    const TowerField& ext_field() const;
    int level() const;                        // Kummer only
    const FieldElement& kummer_generator() const;  // b_norm, Kummer only

    FieldElement embed(const FieldElement& e) const;
    FieldElement conj(const FieldElement& e) const;  // a Galois generator
    FieldElement norm(const FieldElement& e) const;  // lands in the base field

    // Classes of the base-field basis (zeta, x1, ..., xd) inside E.
    std::vector<std::vector<int>> class_map() const;
    // Classes over F of the norms of the E-basis elements.
    std::vector<std::vector<int>> norm_matrix() const;

    CohClass restrict_to_ext(const CohClass& alpha) const;
    bool splits(const CohClass& alpha) const;
    Subgroup norm_class_group() const;  // subgroup of F^*/(F^*)^M

private:
    CyclicExtension() = default;

    Kind kind_ = Kind::Unramified;
    int degree_ = 1;
    TowerField base_{3, 2, 1, 0, {}};  // placeholder; reset by factories
    bool materialized_ = false;
    std::vector<TowerField> ext_;  // [0] when materialized

    // Unramified data.
    int f_ = 1;

    // Kummer data.
    int level_ = 0, m_ = 0;
    std::vector<int> u_;               // exponents of b_norm below the level
    std::vector<FieldElement> bnorm_;  // [0] when Kummer
};

// Towers of cyclic steps, each based in the previous extension field.
FieldElement chain_norm(const std::vector<CyclicExtension>& chain, FieldElement e);
std::vector<std::vector<int>> chain_class_map(const std::vector<CyclicExtension>& chain);
Subgroup chain_norm_class_group(const std::vector<CyclicExtension>& chain);

} // namespace rostlab
