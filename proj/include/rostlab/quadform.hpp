#pragma once

#include <vector>

#include "rostlab/rost.hpp"

namespace rostlab {

/*
 * Diagonal quadratic forms over tower fields with odd residue
 * characteristic, restricted to l = 2, n = 1 so that square classes
 * and class vectors coincide.  Isometry questions are answered through
 * Witt indices: the index of a form is computed by splitting the
 * diagonal by valuation parity at the top level and recursing on the
 * residue forms, with the closed form over the constant field as the
 * base case.
 */
class QuadraticForm {
  public:
    QuadraticForm(const TowerField& field, std::vector<FieldElement> diagonal);

    const TowerField& field() const noexcept { return field_; }
    const std::vector<FieldElement>& diagonal() const noexcept { return diag_; }
    int dim() const noexcept { return (int)diag_.size(); }

    QuadraticForm scaled_by(const FieldElement& c) const;
    QuadraticForm orthogonal_sum(const QuadraticForm& o) const;
    QuadraticForm negated() const;

  private:
    TowerField field_;
    std::vector<FieldElement> diag_;
};

// The six-dimensional form <a, b, -ab, -c, -d, cd> attached to the sum
// of the symbol classes of (a, b) and (c, d).
QuadraticForm albert_form(const FieldElement& a, const FieldElement& b,
                          const FieldElement& c, const FieldElement& d);

// Witt index by residue-form recursion; exact.
int witt_index(const QuadraticForm& q);
bool isotropic(const QuadraticForm& q);

// All classes rho with rho * phi isometric to phi, decided through the
// Witt index of phi + (-rho) * phi.  Requires even dimension.
Subgroup similarity_factors(const QuadraticForm& phi);

/*
 * Three-route comparison for a biquaternion class alpha built from the
 * symbols of (a, b) and (c, d) over a depth-2 tower: the kernel of
 * cupping with alpha, the similarity factors of the Albert form, and
 * the square-class span of the reduced-norm group.  The algebra index
 * is read off the Albert form's Witt index (0, 1, 3 for index 4, 2, 1).
 */
struct Prop21Report {
    CohClass alpha;
    int witt;
    int index;
    Subgroup kernel;
    Subgroup similarity;
    Subgroup norm_span;
    bool holds;
};

Prop21Report check_prop_2_1(const FieldElement& a, const FieldElement& b,
                            const FieldElement& c, const FieldElement& d);

}  // namespace rostlab
