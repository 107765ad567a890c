#include "rostlab/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rostlab {

namespace {

// 0 verified, 1 counterexample or error, 3 inconclusive.
struct Outcome {
    int status = 0;
    std::string detail;
};

unsigned long long mix64(unsigned long long z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/***
 * Sweep driver.  Every cell writes only its own slot, so the parallel
 * and serial paths fill identical arrays; the final tally walks cells
 * in index order, which makes the reduction independent of scheduling.
 */
template <class Fn>
SuiteResult sweep(const std::string& name, long long cells,
                  const SuiteOptions& opt, const Fn& fn) {
    SuiteResult res;
    res.suite = name;
    res.cells = cells;
    std::vector<signed char> status(static_cast<size_t>(cells), 0);
    std::vector<std::string> details(static_cast<size_t>(cells));

    auto one = [&](long long i) {
        std::mt19937_64 rng(mix64(opt.seed ^ mix64(0x726f7374ull + static_cast<unsigned long long>(i))));
        Outcome out;
        try {
            out = fn(i, rng);
        } catch (const std::exception& e) {
            out = {1, e.what()};
        }
        status[static_cast<size_t>(i)] = static_cast<signed char>(out.status);
        if (out.status == 1) details[static_cast<size_t>(i)] = std::move(out.detail);
    };

    if (opt.parallel) {
#ifdef _OPENMP
        int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long long i = 0; i < cells; ++i) one(i);
#else
        for (long long i = 0; i < cells; ++i) one(i);
#endif
    } else {
        for (long long i = 0; i < cells; ++i) one(i);
    }

    for (long long i = 0; i < cells; ++i) {
        signed char s = status[static_cast<size_t>(i)];
        if (s == 0)
            ++res.verified;
        else if (s == 3)
            ++res.inconclusive;
        else
            res.failures.push_back({i, details[static_cast<size_t>(i)]});
    }
    return res;
}

TowerField make_tower(const TowerSpec& s, int window) {
    return TowerField(s.q, s.ell, s.n, s.depth,
                      std::vector<int>(static_cast<size_t>(s.depth), window));
}

std::vector<TowerSpec> scope(const SuiteOptions& opt,
                             std::vector<TowerSpec> defaults) {
    if (opt.tower) return {*opt.tower};
    return defaults;
}

const std::vector<TowerSpec>& matrix_towers() {
    static const std::vector<TowerSpec> m = {
        {3, 2, 1, 1}, {3, 2, 1, 2}, {3, 2, 1, 3}, {7, 3, 1, 2}, {5, 2, 2, 2}};
    return m;
}

int h_rank(int depth, int degree) {
    if (depth < 0) return degree == 0 ? 1 : 0;
    return static_cast<int>(CohClass::basis_keys(depth, degree).size());
}

long long pow_ll(int base, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

std::vector<int> decode_vector(long long idx, int M, int rank) {
    std::vector<int> v(static_cast<size_t>(rank), 0);
    for (int i = 0; i < rank; ++i) {
        v[static_cast<size_t>(i)] = static_cast<int>(idx % M);
        idx /= M;
    }
    return v;
}

std::vector<std::vector<int>> all_vectors(int M, int rank) {
    std::vector<std::vector<int>> out;
    for (long long i = 0; i < pow_ll(M, rank); ++i)
        out.push_back(decode_vector(i, M, rank));
    return out;
}

std::string vec_str(const std::vector<int>& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

FieldElement random_element(const TowerField& F, std::mt19937_64& rng) {
    if (F.depth() == 0)
        return F.scalar(1 + static_cast<int>(rng() % static_cast<unsigned long long>(F.q() - 1)));
    int N = F.top_precision();
    int val = static_cast<int>(rng() % 5) - 2;
    int len = 1 + static_cast<int>(rng() % static_cast<unsigned long long>(N > 3 ? 3 : N));
    TowerField low = F.residue_field();
    std::vector<FieldElement> coeffs;
    coeffs.push_back(random_element(low, rng));
    for (int i = 1; i < len; ++i)
        coeffs.push_back(rng() % 2 ? low.zero() : random_element(low, rng));
    return F.make(val, std::move(coeffs));
}

/***
 * steinberg: randomized identity checks per tower.  Alongside the
 * Steinberg relation itself each cell checks antisymmetry, negation,
 * bilinearity, and that the boundary of a two-symbol equals the tame
 * symbol with its valuation sign.
 */
SuiteResult steinberg_suite(const SuiteOptions& opt) {
    std::vector<TowerField> towers;
    for (const auto& s : scope(opt, matrix_towers()))
        towers.push_back(make_tower(s, 6));
    long long per = std::max<long long>(1, opt.samples);
    long long cells = static_cast<long long>(towers.size()) * per;

    return sweep("steinberg", cells, opt,
                 [&](long long i, std::mt19937_64& rng) -> Outcome {
        const TowerField& F = towers[static_cast<size_t>(i / per)];
        FieldElement a = random_element(F, rng);
        FieldElement b = random_element(F, rng);
        FieldElement c = random_element(F, rng);

        CohClass ab = CohClass::symbol({a, b});
        if (!(ab + CohClass::symbol({b, a})).is_zero())
            return {1, "antisymmetry fails at a=" + a.str() + " b=" + b.str()};
        if (!CohClass::symbol({a, -a}).is_zero())
            return {1, "{a,-a} nonzero at a=" + a.str()};
        FieldElement om = F.one() - a;
        if (!om.is_zero() && !CohClass::symbol({a, om}).is_zero())
            return {1, "Steinberg relation fails at a=" + a.str()};
        if (CohClass::symbol({a * c, b}) != ab + CohClass::symbol({c, b}))
            return {1, "bilinearity fails at a=" + a.str() + " c=" + c.str() +
                           " b=" + b.str()};

        int r = a.valuation(), s = b.valuation();
        FieldElement t = a.pow(s) * b.pow(-r);
        if ((r * s) % 2 != 0) t = -t;
        if (ab.residue().as_class_vector() != t.residue().kummer_class())
            return {1, "tame symbol sign mismatch at a=" + a.str() +
                           " b=" + b.str()};
        return {};
    });
}

/***
 * exact-sequence: exhaustive on cohomology bases.  Three cell kinds
 * per tower: every degree-2 class upstairs (decomposition reassembles;
 * classes with zero boundary are inflations), every degree-1 character
 * downstairs (the boundary is onto it, constructively), and every
 * degree-2 class downstairs (inflation is injective with zero
 * boundary and round-trips through decompose).
 */
SuiteResult exact_sequence_suite(const SuiteOptions& opt) {
    struct Seg {
        TowerField F;
        long long a, b, c;
    };
    std::vector<Seg> segs;
    long long total = 0;
    for (const auto& s : scope(opt, matrix_towers())) {
        TowerField F = make_tower(s, 4);
        int M = F.class_modulus();
        long long a = pow_ll(M, h_rank(F.depth(), 2));
        long long b = pow_ll(M, h_rank(F.depth() - 1, 1));
        long long c = pow_ll(M, h_rank(F.depth() - 1, 2));
        segs.push_back({F, a, b, c});
        total += a + b + c;
    }

    return sweep("exact-sequence", total, opt,
                 [&](long long cell, std::mt19937_64&) -> Outcome {
        long long i = cell;
        for (const Seg& sg : segs) {
            const TowerField& F = sg.F;
            int M = F.class_modulus();
            if (i < sg.a) {
                CohClass alpha = CohClass::from_coeff_vector(
                    F, 2, decode_vector(i, M, h_rank(F.depth(), 2)));
                auto parts = alpha.decompose();
                std::vector<int> etop(static_cast<size_t>(F.depth() + 1), 0);
                etop.back() = 1;
                CohClass re = CohClass::inflate(parts.first, F) +
                              CohClass::inflate(parts.second, F).cup(etop);
                if (re != alpha)
                    return {1, "decomposition does not reassemble " + alpha.str()};
                if (alpha.residue().is_zero()) {
                    if (!parts.second.is_zero() ||
                        CohClass::inflate(parts.first, F) != alpha)
                        return {1, "boundary kernel misses an inflation at " +
                                       alpha.str()};
                }
                return {};
            }
            i -= sg.a;
            if (i < sg.b) {
                std::vector<int> chi = decode_vector(i, M, F.depth());
                std::vector<int> w0 = chi;
                w0.push_back(0);
                std::vector<int> etop(static_cast<size_t>(F.depth() + 1), 0);
                etop.back() = 1;
                CohClass alpha = CohClass::symbol(F, {w0, etop});
                if (alpha.residue().as_class_vector() != chi)
                    return {1, "boundary misses the character " + vec_str(chi)};
                return {};
            }
            i -= sg.b;
            if (i < sg.c) {
                TowerField k = F.residue_field();
                CohClass beta = CohClass::from_coeff_vector(
                    k, 2, decode_vector(i, M, h_rank(k.depth(), 2)));
                CohClass lift = CohClass::inflate(beta, F);
                if (!lift.residue().is_zero())
                    return {1, "inflation has nonzero boundary at " + beta.str()};
                if (beta.is_zero() != lift.is_zero())
                    return {1, "inflation not injective at " + beta.str()};
                auto parts = lift.decompose();
                if (parts.first != beta || !parts.second.is_zero())
                    return {1, "inflation does not round-trip at " + beta.str()};
                return {};
            }
            i -= sg.c;
        }
        return {1, "cell index out of range"};
    });
}

/***
 * rost-div-l: exhaustive kernel/Suslin equality.  Every degree-2
 * class over the period-l towers must have R = S with both routes
 * agreeing; any witness vector is a counterexample.
 */
SuiteResult rost_div_suite(const SuiteOptions& opt) {
    struct Seg {
        TowerField F;
        long long count;
    };
    std::vector<Seg> segs;
    long long total = 0;
    for (const auto& s :
         scope(opt, {{3, 2, 1, 2}, {3, 2, 1, 3}, {7, 3, 1, 3}})) {
        TowerField F = make_tower(s, 4);
        long long count = pow_ll(F.class_modulus(), h_rank(F.depth(), 2));
        segs.push_back({F, count});
        total += count;
    }

    return sweep("rost-div-l", total, opt,
                 [&](long long cell, std::mt19937_64&) -> Outcome {
        long long i = cell;
        for (const Seg& sg : segs) {
            if (i >= sg.count) {
                i -= sg.count;
                continue;
            }
            const TowerField& F = sg.F;
            CohClass alpha = CohClass::from_coeff_vector(
                F, 2, decode_vector(i, F.class_modulus(), h_rank(F.depth(), 2)));
            RostReport rep = quotient_report(alpha);
            if (rep.status == ReportStatus::Counterexample)
                return {1, "R exceeds S at " + alpha.str() + ", witness " +
                               vec_str(rep.witnesses.front())};
            if (rep.status == ReportStatus::Inconclusive) return {3, {}};
            if (rep.quotient_order != 1 || !(rep.R == rep.S))
                return {1, "nontrivial quotient at " + alpha.str()};
            return {};
        }
        return {1, "cell index out of range"};
    });
}

/***
 * thm-4-9: for every class of period l the directly computed |R/S|
 * must equal the group order rebuilt from residue field data by the
 * independent route.  Classes of other periods are out of scope and
 * count as verified; a missing residue route is inconclusive.
 */
SuiteResult thm49_suite(const SuiteOptions& opt) {
    struct Seg {
        TowerField F;
        long long count;
    };
    std::vector<Seg> segs;
    long long total = 0;
    for (const auto& s : scope(opt, {{3, 2, 1, 2}, {7, 3, 1, 2},
                                     {3, 2, 1, 3}, {7, 3, 1, 3}})) {
        TowerField F = make_tower(s, 4);
        long long count = pow_ll(F.class_modulus(), h_rank(F.depth(), 2));
        segs.push_back({F, count});
        total += count;
    }

    return sweep("thm-4-9", total, opt,
                 [&](long long cell, std::mt19937_64&) -> Outcome {
        long long i = cell;
        for (const Seg& sg : segs) {
            if (i >= sg.count) {
                i -= sg.count;
                continue;
            }
            const TowerField& F = sg.F;
            CohClass alpha = CohClass::from_coeff_vector(
                F, 2, decode_vector(i, F.class_modulus(), h_rank(F.depth(), 2)));
            if (period(alpha) != F.ell()) return {};
            RostReport rep = quotient_report(alpha);
            if (rep.status == ReportStatus::Counterexample)
                return {1, "R exceeds S at " + alpha.str()};
            if (!rep.rhs_order) return {3, {}};
            if (*rep.rhs_order != rep.quotient_order)
                return {1, "independent order mismatch at " + alpha.str()};
            return {};
        }
        return {1, "cell index out of range"};
    });
}

/***
 * thm-1-6: every degree-2 class of the (5, l^n = 4, depth 2) tower.
 * S must sit inside R; when S is exact the two must be equal.  Cells
 * where exactness is out of reach are inconclusive, never failures.
 */
SuiteResult thm16_suite(const SuiteOptions& opt) {
    TowerField F = opt.tower ? make_tower(*opt.tower, 4)
                             : TowerField(5, 2, 2, 2, {4, 4});
    if (F.depth() < 1) fail("PreconditionViolated", "thm-1-6 needs depth >= 1");
    long long cells = pow_ll(F.class_modulus(), h_rank(F.depth(), 2));

    return sweep("thm-1-6", cells, opt,
                 [&](long long i, std::mt19937_64&) -> Outcome {
        CohClass alpha = CohClass::from_coeff_vector(
            F, 2, decode_vector(i, F.class_modulus(), h_rank(F.depth(), 2)));
        RostReport rep = quotient_report(alpha);
        if (!rep.R.contains(rep.S))
            return {1, "S escapes R at " + alpha.str()};
        if (rep.status == ReportStatus::Counterexample)
            return {1, "R exceeds S at " + alpha.str() + ", witness " +
                           vec_str(rep.witnesses.front())};
        if (rep.status == ReportStatus::Inconclusive) return {3, {}};
        if (rep.quotient_order != 1)
            return {1, "exact cell with nontrivial quotient at " + alpha.str()};
        return {};
    });
}

/***
 * lemma-4-8: generated inductive-pair problems over F_5((x)) with
 * l^n = 4.  Even cells draw a parameter of odd valuation, odd cells a
 * parameter of even valuation (unit or uniformizer-squared shape);
 * the radicand class is solved from the required symbol coefficient.
 * Both defining equations of the output are re-verified here,
 * independently of the constructor's own internal checks.
 */
SuiteResult lemma48_suite(const SuiteOptions& opt) {
    TowerField k(5, 2, 2, 1, {8});
    long long cells = std::max<long long>(1, opt.samples);
    const int M = 4;

    return sweep("lemma-4-8", cells, opt,
                 [&, k](long long i, std::mt19937_64& rng) -> Outcome {
        int t0, t1, a0, a1;
        if (i % 2 == 0) {
            t1 = rng() % 2 ? 1 : 3;
            t0 = static_cast<int>(rng() % M);
            a1 = static_cast<int>(rng() % M);
            // a0*t1 - a1*t0 + 2*a1*t1 = 2 (mod 4); odd t1 is self-inverse
            a0 = (((2 + a1 * t0 - 2 * a1 * t1) % M + M) % M * t1) % M;
        } else {
            t0 = 1 + 2 * static_cast<int>(rng() % 2);
            if (rng() % 2) {
                t1 = 0;
                a0 = static_cast<int>(rng() % M);
                a1 = 2;  // -a1*t0 = 2 (mod 4) for odd t0
            } else {
                t1 = 2;
                a0 = static_cast<int>(rng() % M);
                a1 = (((2 * a0 - 2) % M + M) % M * t0) % M;
            }
        }

        FieldElement theta = k.zeta().pow(t0) * k.uniformizer(1).pow(t1);
        int w = static_cast<int>(rng() % 5);
        if (w != 0) {
            FieldElement u1 = k.one() + k.scalar(w) * k.uniformizer(1);
            theta = theta * u1.pow(4);
        }
        int cb = rng() % 2 ? 1 : 3;
        CohClass beta = CohClass::symbol(k, {{1, 0}, {0, 1}}).scaled(cb);

        InductivePairProblem prob{k, beta, {a0, a1}, theta, 1, 2};
        InductivePair pr = inductive_pair(prob);

        if (!(pr.L.norm(pr.xi) == theta))
            return {1, "norm equation fails for theta=" + theta.str() +
                           " radicand " + vec_str(prob.radicand)};
        const TowerField& Lf = pr.L.ext_field();
        const auto& T = pr.L.class_map();
        std::vector<int> radL(T.front().size(), 0);
        for (size_t rr = 0; rr < T.size(); ++rr)
            for (size_t cc = 0; cc < radL.size(); ++cc)
                radL[cc] = (radL[cc] + prob.radicand[rr] * T[rr][cc]) % M;
        if (pr.L.restrict_to_ext(beta) !=
            CohClass::symbol(Lf, {radL, pr.xi.kummer_class()}))
            return {1, "symbol equation fails for theta=" + theta.str() +
                           " radicand " + vec_str(prob.radicand)};
        return {};
    });
}

// Splitting-field search: index 1 for the zero class, 2 when any
// quadratic extension splits, else 4.  Independent of the Witt route.
int cohomological_index(const CohClass& alpha) {
    if (alpha.is_zero()) return 1;
    const TowerField& F = alpha.field();
    if (CyclicExtension::make_unramified(F, 2).splits(alpha)) return 2;
    for (const auto& w : all_vectors(2, F.depth() + 1)) {
        bool zero = true;
        for (int c : w) zero = zero && c == 0;
        if (zero) continue;
        try {
            if (CyclicExtension::make_kummer(F, F.representative(w), 1)
                    .splits(alpha))
                return 2;
        } catch (const Error&) {
        }
    }
    return 4;
}

/***
 * prop-2-1: every ordered tuple of square-class representatives over
 * the depth-2 square-class tower.  The report's three routes must
 * agree (it throws otherwise) and the Witt-route index must match the
 * splitting-field search.
 */
SuiteResult prop21_suite(const SuiteOptions& opt) {
    TowerField F = opt.tower ? make_tower(*opt.tower, 6)
                             : TowerField(3, 2, 1, 2, {6, 6});
    if (F.depth() != 2 || F.ell() != 2 || F.n() != 1)
        fail("PreconditionViolated",
             "prop-2-1 needs a depth-2 tower with l^n = 2");
    std::vector<FieldElement> reps;
    for (const auto& w : all_vectors(2, 3)) reps.push_back(F.representative(w));
    long long cells = 8 * 8 * 8 * 8;

    return sweep("prop-2-1", cells, opt,
                 [&](long long i, std::mt19937_64&) -> Outcome {
        const FieldElement& a = reps[static_cast<size_t>(i & 7)];
        const FieldElement& b = reps[static_cast<size_t>((i >> 3) & 7)];
        const FieldElement& c = reps[static_cast<size_t>((i >> 6) & 7)];
        const FieldElement& d = reps[static_cast<size_t>((i >> 9) & 7)];
        Prop21Report rep = check_prop_2_1(a, b, c, d);
        if (!rep.holds)
            return {1, "route disagreement at " + rep.alpha.str()};
        if (rep.index != cohomological_index(rep.alpha))
            return {1, "index mismatch at " + rep.alpha.str()};
        return {};
    });
}

/***
 * cond-6-1-1: exhaustive generator pairs over small fields; the
 * intersection of the two norm groups must match the compositum side.
 */
SuiteResult cond611_suite(const SuiteOptions& opt) {
    struct Seg {
        TowerField F;
        long long side;
    };
    std::vector<Seg> segs;
    long long total = 0;
    for (const auto& s : scope(opt, {{3, 2, 1, 0}, {3, 2, 1, 1},
                                     {7, 3, 1, 1}, {5, 2, 2, 1}})) {
        TowerField F = make_tower(s, 4);
        long long side = pow_ll(F.class_modulus(), F.depth() + 1);
        segs.push_back({F, side});
        total += side * side;
    }

    return sweep("cond-6-1-1", total, opt,
                 [&](long long cell, std::mt19937_64&) -> Outcome {
        long long i = cell;
        for (const Seg& sg : segs) {
            if (i >= sg.side * sg.side) {
                i -= sg.side * sg.side;
                continue;
            }
            const TowerField& F = sg.F;
            int M = F.class_modulus();
            std::vector<int> v1 = decode_vector(i % sg.side, M, F.depth() + 1);
            std::vector<int> v2 = decode_vector(i / sg.side, M, F.depth() + 1);
            ConditionReport rep = condition_6_1_1(F, {v1, v2});
            if (!rep.holds)
                return {1, "norm condition fails at " + vec_str(v1) + ", " +
                               vec_str(v2) + " over " + F.describe()};
            return {};
        }
        return {1, "cell index out of range"};
    });
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "steinberg",  "exact-sequence", "rost-div-l", "thm-1-6",
        "thm-4-9",    "lemma-4-8",      "prop-2-1",   "cond-6-1-1"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
    if (name == "steinberg") return steinberg_suite(opt);
    if (name == "exact-sequence") return exact_sequence_suite(opt);
    if (name == "rost-div-l") return rost_div_suite(opt);
    if (name == "thm-1-6") return thm16_suite(opt);
    if (name == "thm-4-9") return thm49_suite(opt);
    if (name == "lemma-4-8") return lemma48_suite(opt);
    if (name == "prop-2-1") return prop21_suite(opt);
    if (name == "cond-6-1-1") return cond611_suite(opt);
    fail("UnknownSuite", "no suite named " + name);
}

}  // namespace rostlab
