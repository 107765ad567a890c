#include "rostlab/rost.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "rostlab/error.hpp"
#include "rostlab/fq.hpp"

namespace rostlab {
namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int mod_pos(long long a, long long m) {
    long long r = a % m;
    return (int)(r < 0 ? r + m : r);
}

std::vector<int> apply_matrix(const std::vector<int>& v,
                              const std::vector<std::vector<int>>& T, int M) {
    check_internal(v.size() == T.size(), "class/matrix size mismatch");
    std::vector<int> out(T.empty() ? 0 : T[0].size(), 0);
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < out.size(); ++j)
            out[j] = mod_pos(out[j] + (long long)v[i] * T[i][j], M);
    return out;
}

// Primitive root of unity of order e, as a constant of F.
FieldElement root_of_unity(const TowerField& F, long long e) {
    auto fq = FqField::get(F.q());
    check_internal((F.q() - 1) % e == 0, "root of unity order");
    return F.scalar(fq->pow(fq->zeta(), (F.q() - 1) / e));
}

void require_degree2(const CohClass& alpha) {
    if (alpha.degree() != 2)
        fail("PreconditionViolated", "expected a degree-2 class, got degree " +
                                         std::to_string(alpha.degree()));
    if (alpha.field().depth() > 3)
        fail("PreconditionViolated", "towers of depth > 3 are out of scope");
}

// Every class vector of (Z/M)^rank in odometer order.
std::vector<std::vector<int>> all_vectors(int M, int rank) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(rank, 0);
    while (true) {
        out.push_back(v);
        int i = 0;
        while (i < rank && ++v[i] == M) v[i++] = 0;
        if (i == rank) break;
    }
    return out;
}

// Dedup key for an enumerated cyclic extension.
std::vector<int> extension_key(const CyclicExtension& E) {
    std::vector<int> key{E.kind() == CyclicExtension::Kind::Unramified ? 0 : 1,
                         E.degree()};
    if (E.kind() == CyclicExtension::Kind::Kummer) {
        key.push_back(E.level());
        auto cls = E.kummer_generator().kummer_class();
        key.insert(key.end(), cls.begin(), cls.end());
    }
    return key;
}

// The unit-part recursion for the Suslin group of a period-l class:
// l-th powers, lifts of norms of the Suslin group over the ramification
// extension's residue data, and the classes of coprime valuation that
// keep alpha cup lambda unramified.  Available when the ramification
// extension materializes; exact when it is.
std::optional<Subgroup> residue_route(const CohClass& alpha) {
    const TowerField& F = alpha.field();
    const int M = F.class_modulus(), d = F.depth(), rank = d + 1;
    if (d < 2) return std::nullopt;
    if (period(alpha) > F.ell()) return std::nullopt;

    auto parts = alpha.decompose();
    TowerField k = F.residue_field();
    CyclicExtension E0 = character_extension(k, parts.second.as_class_vector());
    if (!E0.materialized()) return std::nullopt;

    NrdGroup SE = suslin_group(E0.restrict_to_ext(parts.first));
    if (SE.exactness != Exactness::Exact) return std::nullopt;

    Subgroup W = SE.group.image(d, E0.norm_matrix())
                     .join(Subgroup::full(M, d).scaled(F.ell()));

    std::vector<std::vector<int>> gens;
    for (const auto& w : W.rows()) {
        std::vector<int> lift = w;
        lift.push_back(0);
        gens.push_back(lift);
    }
    Subgroup ell_powers = Subgroup::full(M, rank).scaled(F.ell());
    for (const auto& row : ell_powers.rows()) gens.push_back(row);
    for (const auto& v : all_vectors(M, rank)) {
        if (v[rank - 1] % F.ell() == 0) continue;
        if (alpha.cup(v).residue().is_zero()) gens.push_back(v);
    }
    return Subgroup::span(M, rank, gens);
}

} // namespace

long long period(const CohClass& alpha) {
    const int M = alpha.field().class_modulus();
    long long g = M;
    for (int c : alpha.coeff_vector()) g = std::gcd(g, (long long)mod_pos(c, M));
    return M / g;
}

CyclicExtension character_extension(const TowerField& k, const std::vector<int>& chi) {
    const int M = k.class_modulus();
    if ((int)chi.size() != k.depth() + 1)
        fail("PreconditionViolated", "character vector has wrong length");
    long long g = M;
    for (int c : chi) g = std::gcd(g, (long long)mod_pos(c, M));
    if (g == M) return CyclicExtension::make_unramified(k, 1);
    std::vector<int> reduced(chi.size());
    for (size_t i = 0; i < chi.size(); ++i) reduced[i] = (int)(mod_pos(chi[i], M) / g);
    int m = 0;
    for (long long t = M / g; t > 1; t /= k.ell()) ++m;
    return CyclicExtension::make_kummer(k, k.representative(reduced), m);
}

FieldElement kummer_root(const FieldElement& z, int j) {
    if (z.is_zero()) fail("PreconditionViolated", "root of zero");
    if (j < 0) fail("PreconditionViolated", "negative root exponent");
    if (j == 0) return z;
    const TowerField& F = z.field();
    const long long e = ipow(F.ell(), j);
    if (F.depth() == 0) {
        auto fq = FqField::get(F.q());
        long long dl = fq->dlog(z.scalar_value());
        if (dl % e != 0) fail("PreconditionViolated", "scalar is not an l^j-th power");
        return F.scalar(fq->pow(fq->zeta(), dl / e));
    }
    const long long v = z.valuation();
    if (v % e != 0) fail("PreconditionViolated", "valuation not divisible by l^j");
    FieldElement u = z.unit_part();
    FieldElement lead = u.residue();
    FieldElement lift = F.from_residue(kummer_root(lead, j));
    FieldElement one_unit = u / F.from_residue(lead);
    FieldElement root =
        F.uniformizer(F.depth()).pow(v / e) * lift * one_unit.nth_root_one_unit(e);
    check_internal(root.pow(e) == z, "root verification");
    return root;
}

Subgroup rost_kernel(const CohClass& alpha) {
    require_degree2(alpha);
    const TowerField& F = alpha.field();
    const int M = F.class_modulus(), rank = F.depth() + 1;
    const int ncols = (int)CohClass::basis_keys(F.depth(), 3).size();
    if (ncols == 0) return Subgroup::full(M, rank);
    std::vector<std::vector<int>> rows;
    for (int b = 0; b < rank; ++b) {
        std::vector<int> e(rank, 0);
        e[b] = 1;
        rows.push_back(alpha.cup(e).coeff_vector());
    }
    return Subgroup::left_kernel(M, ncols, rows);
}

NrdGroup nrd_class_group(const CohClass& alpha) {
    require_degree2(alpha);
    const TowerField& F = alpha.field();
    const int M = F.class_modulus(), d = F.depth(), rank = d + 1;
    if (d <= 1) return {Subgroup::full(M, rank), Exactness::Exact};

    Subgroup G(M, rank);
    for (int j = 0, f = 1; j <= F.n(); ++j, f *= F.ell()) {
        CyclicExtension E = CyclicExtension::make_unramified(F, f);
        if (E.splits(alpha)) G = G.join(E.norm_class_group());
    }
    std::set<std::vector<int>> seen;
    for (int m = 1; m <= F.n(); ++m) {
        const int Mm = (int)ipow(F.ell(), m);
        for (const auto& w : all_vectors(Mm, rank)) {
            if (std::all_of(w.begin(), w.end(), [](int c) { return c == 0; })) continue;
            CyclicExtension E = CyclicExtension::make_unramified(F, 1);
            try {
                E = CyclicExtension::make_kummer(F, F.representative(w), m);
            } catch (const Error&) {
                continue;  // degenerate or unsupported radicand shape
            }
            if (!seen.insert(extension_key(E)).second) continue;
            if (E.splits(alpha)) G = G.join(E.norm_class_group());
        }
    }

    Exactness flag = Exactness::LowerBound;
    if (period(alpha) <= F.ell()) {
        auto route = residue_route(alpha);
        if (route &&
            G.join(Subgroup::full(M, rank).scaled(F.ell())) == *route)
            flag = Exactness::Exact;
    }
    return {G, flag};
}

SuslinPaths suslin_group_paths(const CohClass& alpha) {
    require_degree2(alpha);
    const TowerField& F = alpha.field();
    const int M = F.class_modulus(), rank = F.depth() + 1, ell = F.ell();
    const Subgroup full = Subgroup::full(M, rank);
    if (alpha.is_zero() || F.depth() <= 1)
        return {{full, Exactness::Exact}, full, std::nullopt};

    const long long per = period(alpha);
    NrdGroup nrd = nrd_class_group(alpha);

    if (per <= ell) {
        Subgroup span = nrd.group.join(full.scaled(ell));
        auto route = residue_route(alpha);
        if (!route) return {{span, nrd.exactness}, span, std::nullopt};
        check_internal(route->contains(span),
                       "norm-span generators escape the residue-route Suslin group");
        return {{*route, Exactness::Exact}, span, route};
    }

    NrdGroup up = suslin_group(alpha.scaled(ell));
    Subgroup span = nrd.group.join(up.group.scaled(ell));
    Exactness flag = (nrd.exactness == Exactness::Exact &&
                      up.exactness == Exactness::Exact)
                         ? Exactness::Exact
                         : Exactness::LowerBound;
    if (up.exactness == Exactness::Exact) {
        check_internal(up.group.contains(span),
                       "Suslin lower bound escapes the group of the l-fold class");
        if (flag != Exactness::Exact && span == up.group) flag = Exactness::Exact;
    }
    return {{span, flag}, span, std::nullopt};
}

NrdGroup suslin_group(const CohClass& alpha) { return suslin_group_paths(alpha).combined; }

RostReport quotient_report(const CohClass& alpha) {
    require_degree2(alpha);
    const TowerField& F = alpha.field();
    const int M = F.class_modulus(), d = F.depth(), ell = F.ell();

    Subgroup R = rost_kernel(alpha);
    NrdGroup S = suslin_group(alpha);
    check_internal(R.contains(S.group), "Suslin group escapes the Rost kernel");

    std::vector<std::vector<int>> witnesses;
    for (const auto& v : R.elements())
        if (!S.group.contains(v)) witnesses.push_back(v);

    const unsigned long long qorder = R.order() / S.group.order();

    std::optional<unsigned long long> rhs;
    if (period(alpha) == ell && d >= 1) {
        auto parts = alpha.decompose();
        TowerField k = F.residue_field();
        CyclicExtension E0 = character_extension(k, parts.second.as_class_vector());
        if (E0.materialized()) {
            NrdGroup SE = suslin_group(E0.restrict_to_ext(parts.first));
            if (SE.exactness == Exactness::Exact) {
                Subgroup num = rost_kernel(parts.first).meet(E0.norm_class_group());
                Subgroup den = SE.group.image(d, E0.norm_matrix())
                                   .join(Subgroup::full(M, d).scaled(ell));
                check_internal(num.contains(den),
                               "residue-route denominator escapes the numerator");
                rhs = num.order() / den.order();
            }
        }
    }

    ReportStatus status = ReportStatus::Verified;
    if (S.exactness != Exactness::Exact)
        status = ReportStatus::Inconclusive;
    else if (!witnesses.empty())
        status = ReportStatus::Counterexample;
    if (status == ReportStatus::Verified && rhs)
        check_internal(*rhs == qorder,
                       "quotient order disagrees with the residue-route order");

    return {alpha, period(alpha), R,   S.group, S.exactness,
            qorder, rhs,          witnesses, status};
}

InductivePairProblem make_inductive_problem(const TowerField& k, const CohClass& beta,
                                            const CyclicExtension& K,
                                            const FieldElement& theta, int m, int n) {
    if (K.base() != k) fail("FieldMismatch", "extension is not based in k");
    const int M = k.class_modulus();
    std::vector<int> gen(k.depth() + 1, 0);
    if (K.kind() == CyclicExtension::Kind::Kummer)
        gen = K.kummer_generator().kummer_class();
    else
        gen[0] = 1;
    const int scale = M / K.degree();
    for (int& c : gen) c = mod_pos((long long)c * scale, M);
    return {k, beta, gen, theta, m, n};
}

namespace {

// Both target equalities for an inductive pair, by direct computation.
bool pair_verifies(const CyclicExtension& L, const InductivePairProblem& prob,
                   const FieldElement& xi) {
    if (L.norm(xi) != prob.theta) return false;
    const TowerField& Lf = L.ext_field();
    const int M = prob.k.class_modulus();
    CohClass lhs =
        L.restrict_to_ext(prob.beta).scaled((int)(ipow(prob.k.ell(), prob.m - 1) % M));
    std::vector<int> radL = apply_matrix(prob.radicand, L.class_map(), M);
    CohClass rhs = CohClass::symbol(Lf, {radL, xi.kummer_class()});
    return lhs == rhs;
}

} // namespace

InductivePair inductive_pair(const InductivePairProblem& prob) {
    const TowerField& k = prob.k;
    const int ell = k.ell(), M = k.class_modulus(), q = k.q();
    if (k.depth() != 1)
        fail("PreconditionViolated", "the base field must have depth 1");
    if (prob.n != k.n())
        fail("PreconditionViolated", "n does not match the field modulus");
    if (prob.m < 1 || prob.m >= prob.n)
        fail("PreconditionViolated", "m must satisfy 1 <= m < n");
    if (prob.beta.degree() != 2 || prob.beta.field() != k)
        fail("PreconditionViolated", "beta must be a degree-2 class over k");
    if ((int)prob.radicand.size() != k.depth() + 1)
        fail("PreconditionViolated", "radicand class vector has wrong length");
    if (prob.theta.is_zero())
        fail("PreconditionViolated", "theta must be nonzero");
    std::vector<int> tc = prob.theta.kummer_class();
    if (std::all_of(tc.begin(), tc.end(), [&](int c) { return c % ell == 0; }))
        fail("PreconditionViolated", "theta is an l-th power");
    CohClass target = prob.beta.scaled((int)ipow(ell, prob.m));
    if (target != CohClass::symbol(k, {prob.radicand, tc}))
        fail("PreconditionViolated", "l^m beta is not the cyclic class of (K, theta)");
    if (target.is_zero())
        fail("PreconditionViolated", "l^m beta vanishes");

    const long long v = prob.theta.valuation();
    if (v % ell != 0) {
        // Ramified case: L adjoins an l-th root of -theta and xi is the
        // negative of a root, scanned over the root-of-unity ambiguity.
        CyclicExtension L = CyclicExtension::make_kummer(k, -prob.theta, 1);
        FieldElement root = kummer_root(L.embed(-prob.theta), 1);
        FieldElement zl = root_of_unity(L.ext_field(), ell);
        for (int i = 0; i < ell; ++i) {
            FieldElement xi = -root;
            if (pair_verifies(L, prob, xi)) return {L, xi};
            root = root * zl;
        }
        fail("InternalVerificationFailed", "no root of -theta yields a valid pair");
    }

    // Unramified case: solve for the residue of xi in F_{q^l} and lift.
    const long long s = v / ell;
    CyclicExtension L = CyclicExtension::make_unramified(k, ell);
    if (!L.materialized())
        fail("UnsupportedShape", "the degree-l unramified extension exceeds the field cap");
    auto fq = FqField::get(q);
    auto fqL = FqField::get((int)ipow(q, ell));
    auto emb = FqEmbedding::get(q, fqL->q());

    const int theta0 = prob.theta.unit_part().residue().scalar_value();
    const int cb = prob.beta.residue().as_class_vector()[0];
    const int B = emb->embed(fq->pow(fq->zeta(), cb));
    const int A0 = emb->embed(fq->pow(fq->zeta(), mod_pos(-prob.radicand[0], q - 1)));
    const long long va = prob.radicand[k.depth()];

    FieldElement rho = prob.theta.unit_part() /
                       k.from_residue(prob.theta.unit_part().residue());
    FieldElement lift_tail =
        L.embed(k.uniformizer(1).pow(s) * rho.nth_root_one_unit(ell));

    for (int enc = 1; enc < fqL->q(); ++enc) {
        if (emb->norm(enc) != theta0) continue;
        int t = fqL->mul(fqL->pow(B, ipow(ell, prob.m - 1)), fqL->pow(enc, va));
        t = fqL->mul(t, fqL->pow(A0, s));
        if ((va % 2 != 0) && (s % 2 != 0)) t = fqL->neg(t);
        if (fqL->dlog(t) % M != 0) continue;
        FieldElement xi = L.ext_field().scalar(enc) * lift_tail;
        if (pair_verifies(L, prob, xi)) return {L, xi};
    }
    fail("InternalVerificationFailed", "no residue-level norm solution yields a valid pair");
}

NormWitness lemma_4_2_witness(const CohClass& alpha, const FieldElement& lam) {
    require_degree2(alpha);
    const TowerField& F = alpha.field();
    const int M = F.class_modulus(), d = F.depth(), ell = F.ell();
    if (d < 1) fail("PreconditionViolated", "the field must have a top valuation");
    if (lam.is_zero()) fail("PreconditionViolated", "lambda must be nonzero");
    const long long r = lam.valuation();
    if (r % ell == 0)
        fail("PreconditionViolated", "the valuation of lambda must be coprime to l");
    if (!alpha.cup(lam.kummer_class()).residue().is_zero())
        fail("PreconditionViolated", "alpha cup lambda is ramified");

    // rs + Mc = 1 moves lambda to valuation 1 inside the same norm data.
    long long s = 1;
    while (mod_pos(r * s, M) != 1) ++s;
    const long long c = (1 - r * s) / M;
    FieldElement lam1 = lam.pow(s) * F.uniformizer(d).pow(M * c);
    check_internal(lam1.valuation() == 1, "valuation reduction");

    CyclicExtension L = CyclicExtension::make_kummer(F, -lam1, F.n());
    FieldElement mu = kummer_root(L.embed(-lam1), F.n());
    check_internal(L.splits(alpha), "the reduced class fails to split alpha");
    FieldElement expected = (M % 2 == 0) ? lam1 : -lam1;
    check_internal(L.norm(mu) == expected, "norm of the adjoined root");
    return {L, mu, lam1};
}

ConditionReport condition_6_1_1(const TowerField& k,
                                const std::vector<std::vector<int>>& gens) {
    const int M = k.class_modulus(), rank = k.depth() + 1, ell = k.ell();
    if (k.depth() > 1) fail("PreconditionViolated", "the field must have depth <= 1");
    if (gens.size() > 2) fail("PreconditionViolated", "at most two generators");
    for (const auto& a : gens)
        if ((int)a.size() != rank)
            fail("PreconditionViolated", "generator class vector has wrong length");

    const Subgroup full = Subgroup::full(M, rank);
    Subgroup lhs = full;
    std::vector<CyclicExtension> exts;
    std::vector<std::vector<int>> live;  // generators whose extension is proper
    for (const auto& a : gens) {
        try {
            CyclicExtension E = CyclicExtension::make_kummer(k, k.representative(a), 1);
            lhs = lhs.meet(E.norm_class_group());
            exts.push_back(E);
            live.push_back(a);
        } catch (const Error& e) {
            if (e.name() != "NotAField") throw;
            // The degenerate extension is k itself; its norms are everything.
        }
    }

    Subgroup rhs = full;
    if (exts.size() == 1) {
        rhs = full.scaled(ell).join(exts[0].norm_class_group());
    } else if (exts.size() == 2) {
        std::vector<CyclicExtension> chain{exts[0]};
        try {
            FieldElement b2 = exts[0].embed(k.representative(live[1]));
            chain.push_back(CyclicExtension::make_kummer(exts[0].ext_field(), b2, 1));
        } catch (const Error& e) {
            if (e.name() != "NotAField") throw;
        }
        rhs = full.scaled(ell).join(chain_norm_class_group(chain));
    }

    check_internal(lhs.contains(rhs), "compositum norms escape the intersection");
    return {lhs, rhs, lhs == rhs};
}

} // namespace rostlab
