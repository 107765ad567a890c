#include "rostlab/quadform.hpp"

#include <utility>

#include "rostlab/error.hpp"
#include "rostlab/fq.hpp"

namespace rostlab {

namespace {

void require_square_class_field(const TowerField& F) {
    if (F.ell() != 2 || F.n() != 1)
        fail("PreconditionViolated",
             "quadratic forms require square classes (l = 2, n = 1)");
}

// Dimension of the anisotropic kernel.  Constant field: an odd form
// keeps one slot, an even form is hyperbolic exactly when its signed
// discriminant (-1)^(r/2) * prod(entries) is a square.  Positive depth:
// split the diagonal by top valuation parity and recurse on the unit
// residues (Springer decomposition; residue characteristic is odd).
int aniso_dim(const TowerField& F, const std::vector<FieldElement>& entries) {
    if (entries.empty()) return 0;
    if (F.depth() == 0) {
        int r = (int)entries.size();
        if (r % 2 == 1) return 1;
        auto fq = FqField::get(F.q());
        long long bit = (long long)(r / 2) * ((F.q() - 1) / 2);
        for (const auto& e : entries) bit += fq->dlog(e.scalar_value());
        return bit % 2 == 0 ? 0 : 2;
    }
    TowerField k = F.residue_field();
    std::vector<FieldElement> even, odd;
    for (const auto& e : entries) {
        FieldElement res = e.unit_part().residue();
        (e.valuation() % 2 == 0 ? even : odd).push_back(res);
    }
    return aniso_dim(k, even) + aniso_dim(k, odd);
}

}  // namespace

QuadraticForm::QuadraticForm(const TowerField& field,
                             std::vector<FieldElement> diagonal)
    : field_(field), diag_(std::move(diagonal)) {
    require_square_class_field(field_);
    for (const auto& e : diag_) {
        if (e.field() != field_)
            fail("FieldMismatch", "form entry from a different field");
        if (e.is_zero()) fail("ZeroEntry", "form entries must be nonzero");
    }
}

QuadraticForm QuadraticForm::scaled_by(const FieldElement& c) const {
    if (c.is_zero()) fail("ZeroEntry", "scaling factor must be nonzero");
    std::vector<FieldElement> d;
    d.reserve(diag_.size());
    for (const auto& e : diag_) d.push_back(e * c);
    return QuadraticForm(field_, std::move(d));
}

QuadraticForm QuadraticForm::orthogonal_sum(const QuadraticForm& o) const {
    if (field_ != o.field_)
        fail("FieldMismatch", "orthogonal sum of forms over different fields");
    std::vector<FieldElement> d = diag_;
    d.insert(d.end(), o.diag_.begin(), o.diag_.end());
    return QuadraticForm(field_, std::move(d));
}

QuadraticForm QuadraticForm::negated() const {
    std::vector<FieldElement> d;
    d.reserve(diag_.size());
    for (const auto& e : diag_) d.push_back(-e);
    return QuadraticForm(field_, std::move(d));
}

QuadraticForm albert_form(const FieldElement& a, const FieldElement& b,
                          const FieldElement& c, const FieldElement& d) {
    if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero())
        fail("ZeroEntry", "symbol slots must be nonzero");
    const TowerField& F = a.field();
    return QuadraticForm(F, {a, b, -(a * b), -c, -d, c * d});
}

int witt_index(const QuadraticForm& q) {
    return (q.dim() - aniso_dim(q.field(), q.diagonal())) / 2;
}

bool isotropic(const QuadraticForm& q) { return witt_index(q) >= 1; }

Subgroup similarity_factors(const QuadraticForm& phi) {
    if (phi.dim() % 2 != 0)
        fail("OddDimension", "similarity factors need an even-dimensional form");
    const TowerField& F = phi.field();
    const int rank = F.depth() + 1;
    std::vector<std::vector<int>> members;
    std::vector<int> cls(rank, 0);
    for (;;) {
        FieldElement rho = F.representative(cls);
        if (witt_index(phi.orthogonal_sum(phi.scaled_by(rho).negated())) ==
            phi.dim())
            members.push_back(cls);
        int i = 0;
        while (i < rank && ++cls[i] == 2) cls[i++] = 0;
        if (i == rank) break;
    }
    return Subgroup::span(2, rank, members);
}

Prop21Report check_prop_2_1(const FieldElement& a, const FieldElement& b,
                            const FieldElement& c, const FieldElement& d) {
    const TowerField& F = a.field();
    require_square_class_field(F);
    if (F.depth() != 2)
        fail("PreconditionViolated", "three-route comparison runs at depth 2");

    QuadraticForm phi = albert_form(a, b, c, d);
    CohClass alpha = CohClass::symbol(F, {a.kummer_class(), b.kummer_class()});
    alpha = alpha +
            CohClass::symbol(F, {c.kummer_class(), d.kummer_class()});

    int wi = witt_index(phi);
    if (wi != 0 && wi != 1 && wi != 3)
        fail("InternalVerificationFailed",
             "Albert form Witt index outside {0, 1, 3}");
    int index = wi == 0 ? 4 : (wi == 1 ? 2 : 1);

    Subgroup R = rost_kernel(alpha);
    Subgroup G = similarity_factors(phi);
    Subgroup N = nrd_class_group(alpha).group.join(
        Subgroup::full(2, F.depth() + 1).scaled(2));

    if (!(R == G && G == N))
        fail("InternalVerificationFailed",
             "kernel, similarity, and norm routes disagree");
    return Prop21Report{alpha, wi, index, R, G, N, true};
}

}  // namespace rostlab
