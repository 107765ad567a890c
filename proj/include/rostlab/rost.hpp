#pragma once

#include <optional>
#include <vector>

#include "rostlab/cohomology.hpp"
#include "rostlab/extension.hpp"
#include "rostlab/zmod.hpp"

namespace rostlab {

/***
 * Rost kernels, reduced-norm class groups, and Suslin groups of a
 * degree-2 class alpha over an iterated Laurent series field.  All
 * groups live in the class group of F modulo M-th powers on the basis
 * (zeta, x1, ..., xd), M = l^n, and every equality is exact.
 *
 * Subgroups obtained by enumerating norm groups of splitting extensions
 * carry an exactness flag: Exact means the subgroup provably equals the
 * named group, LowerBound means the enumeration only bounds it from
 * below (splitting fields outside the supported cyclic shapes may
 * contribute more norms).
 */
enum class Exactness { Exact, LowerBound };

enum class ReportStatus { Verified, Counterexample, Inconclusive };

struct NrdGroup {
    Subgroup group;
    Exactness exactness;
};

// Both computation routes for the Suslin group, kept separate so their
// agreement can be tested.  norm_span comes from the product of scaled
// reduced-norm groups; residue_route rebuilds the group from residue
// field data (unit lifts through the ramification extension, l-th
// powers, and coprime-valuation classes) and is available for classes
// of period dividing l when the ramification extension materializes.
struct SuslinPaths {
    NrdGroup combined;
    Subgroup norm_span;
    std::optional<Subgroup> residue_route;
};

struct RostReport {
    CohClass alpha;
    long long period;
    Subgroup R;
    Subgroup S;
    Exactness s_exactness;
    unsigned long long quotient_order;          // |R| / |S|
    std::optional<unsigned long long> rhs_order; // residue-route order, period l only
    std::vector<std::vector<int>> witnesses;    // class vectors in R not in S
    ReportStatus status;
};

/***
 * Input for the inductive-pair constructor: a degree-2 class beta over
 * a depth-1 field k with l^m * beta = (k(M-th root of a)/k, theta)
 * nonzero, theta not an l-th power, 1 <= m < n.  The cyclic algebra on
 * the right is the symbol of the radicand class with class(theta), so
 * the radicand enters as its class vector; mixed radicand shapes that
 * no single-level extension presents are still valid input this way.
 */
struct InductivePairProblem {
    TowerField k;
    CohClass beta;
    std::vector<int> radicand;  // class vector of a, K = k(M-th root of a)
    FieldElement theta;
    int m = 1;
    int n = 2;
};

// The same problem with the extension given directly; the factory
// extracts the generator class.
InductivePairProblem make_inductive_problem(const TowerField& k, const CohClass& beta,
                                            const CyclicExtension& K,
                                            const FieldElement& theta, int m, int n);

struct InductivePair {
    CyclicExtension L;
    FieldElement xi;
};

struct NormWitness {
    CyclicExtension L;
    FieldElement mu;
    FieldElement lambda_reduced;  // lambda^s * x^(Mc) with valuation 1
};

struct ConditionReport {
    Subgroup lhs;
    Subgroup rhs;
    bool holds;
};

// Order of alpha in H^2 (an l-power dividing M).
long long period(const CohClass& alpha);

// The cyclic extension of k cut out by a degree-1 character, given as a
// class vector: unramified of degree 1 for the zero character, else the
// Kummer extension of degree equal to the character's order.
CyclicExtension character_extension(const TowerField& k, const std::vector<int>& chi);

// l^j-th root of an element whose class vanishes mod l^j; the choice is
// canonical (uniformizer powers, scalar discrete logs, one-unit roots).
FieldElement kummer_root(const FieldElement& z, int j);

// {v : alpha cup v = 0}, by kernel solve of the linear-in-v cup map.
Subgroup rost_kernel(const CohClass& alpha);

// Reduced-norm classes of alpha.  Depth <= 1: the full group, Exact.
// Deeper: the span of norm groups of supported cyclic splitting
// extensions, LowerBound unless the residue-route Suslin computation
// certifies that nothing mod l-th powers is missing.
NrdGroup nrd_class_group(const CohClass& alpha);

// Suslin group: the span over d | M of d-scaled reduced-norm groups of
// d*alpha, cross-built through residue field data for period-l classes.
NrdGroup suslin_group(const CohClass& alpha);
SuslinPaths suslin_group_paths(const CohClass& alpha);

// R, S, |R/S|, the independent residue-route order for period-l
// classes, and the witness list with a verdict.
RostReport quotient_report(const CohClass& alpha);

// Degree-l extension L/k and xi with theta = N(xi) and
// l^(m-1) * beta_L = (KL/L, xi); both equalities are re-verified by
// direct computation before returning.
InductivePair inductive_pair(const InductivePairProblem& prob);

// For lambda with top valuation coprime to l and residue(alpha cup
// lambda) = 0: the degree-M Kummer extension L = F(M-th root of
// -lambda') for the valuation-1 reduction lambda' of lambda, which
// splits alpha, together with mu with N(mu) = (-1)^M * lambda'.
NormWitness lemma_4_2_witness(const CohClass& alpha, const FieldElement& lam);

// Norm-group intersection test over a depth <= 1 field: lhs is the
// intersection of the degree-l norm groups of k(l-th root of a_i), rhs
// is generated by l-th powers and the compositum's norm group; rhs is
// contained in lhs unconditionally, and holds reports equality.
ConditionReport condition_6_1_1(const TowerField& k,
                                const std::vector<std::vector<int>>& gens);

} // namespace rostlab
