#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rostlab/tower.hpp"

namespace rostlab {

/***
 * Galois cohomology of an iterated Laurent series field with Z/M
 * coefficients, M = l^n.  A degree-m class is stored on the monomial
 * basis: a key is a bitmask over the slots (bit 0 the canonical root of
 * unity zeta, bit i the uniformizer x_i) with exactly m bits set.  Every
 * symbol reduces to this basis through the normal form: slots sort with
 * a sign per transposition, two zeta slots kill a term, and a repeated
 * uniformizer pair (x,x) rewrites to (zeta,x) times dlog(-1).
 *
 * The basis has rank C(d,m) + C(d,m-1); valuations and discrete logs
 * make every operation exact.
 */
class CohClass {
public:
    CohClass(TowerField F, int degree);  // the zero class
    static CohClass symbol(const TowerField& F,
                           const std::vector<std::vector<int>>& entries);
    static CohClass symbol(const std::vector<FieldElement>& entries);

    const TowerField& field() const noexcept { return fld_; }
    int degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    const std::map<unsigned, int>& terms() const noexcept { return terms_; }

    CohClass operator+(const CohClass& o) const;
    CohClass operator-(const CohClass& o) const;
    CohClass scaled(int c) const;
    bool operator==(const CohClass& o) const;
    bool operator!=(const CohClass& o) const { return !(*this == o); }

    // Cup with a degree-1 class appended as the last symbol slot.
    CohClass cup(const std::vector<int>& cls) const;
    // Residue map to the residue field: keeps the terms carrying the
    // top uniformizer, drops that slot.
    CohClass residue() const;
    // Inflation from the residue field of F.
    static CohClass inflate(const CohClass& low, const TowerField& F);
    // alpha = inflate(first) + inflate(second) cup (top uniformizer).
    std::pair<CohClass, CohClass> decompose() const;

    // Coefficients on the ordered basis keys, for subgroup arithmetic.
    static std::vector<unsigned> basis_keys(int depth, int degree);
    std::vector<int> coeff_vector() const;
    static CohClass from_coeff_vector(const TowerField& F, int degree,
                                      const std::vector<int>& coeffs);

    // Degree-1 classes correspond to unit class vectors.
    std::vector<int> as_class_vector() const;

    std::string str() const;

private:
    void add_term(std::vector<int> slots, long long coeff);

    TowerField fld_;
    int degree_;
    std::map<unsigned, int> terms_;
};

// Both routes of the ramification test: the residue of alpha cup
// class(lambda) vanishes iff v(lambda)*alpha is the symbol of the
// residue character with (-1)^v * lambda.  Computes the two sides
// independently and insists they agree before answering.
bool is_ramification_compatible(const CohClass& alpha, const FieldElement& lambda);

} // namespace rostlab
