#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rostlab/extension.hpp"

using rostlab::chain_class_map;
using rostlab::chain_norm;
using rostlab::chain_norm_class_group;
using rostlab::CohClass;
using rostlab::CyclicExtension;
using rostlab::Error;
using rostlab::FieldElement;
using rostlab::Subgroup;
using rostlab::TowerField;

namespace {

std::string error_name(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.name();
    }
    return "";
}

// Random nonzero element with at most two occupied exponents per level,
// so that products of a handful of them stay inside every window.
FieldElement sparse_element(const TowerField& F, std::mt19937& rng) {
    if (F.depth() == 0) return F.scalar(1 + (int)(rng() % (unsigned)(F.q() - 1)));
    TowerField low = F.residue_field();
    int val = (int)(rng() % 3) - 1;
    std::vector<FieldElement> coeffs;
    coeffs.push_back(sparse_element(low, rng));
    if (rng() % 2) coeffs.push_back(sparse_element(low, rng));
    return F.make(val, std::move(coeffs));
}

std::vector<int> apply_matrix(const std::vector<int>& v,
                              const std::vector<std::vector<int>>& T, int M) {
    std::vector<int> out(T[0].size(), 0);
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < out.size(); ++j)
            out[j] = (int)(((long long)out[j] + (long long)v[i] * T[i][j]) % M);
    return out;
}

// All class vectors over F, as monomial representatives.
std::vector<std::vector<int>> all_classes(const TowerField& F) {
    int M = F.class_modulus(), r = F.depth() + 1;
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r, 0);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < r && ++cur[i] == M) cur[i++] = 0;
        if (i == r) break;
    }
    return out;
}

// The two completeness directions of the norm class group at once:
// every norm lands in it, and its closed form is spanned by norms.
void check_norm_group_exhaustive(const CyclicExtension& ext) {
    const TowerField& E = ext.ext_field();
    int M = ext.base().class_modulus();
    Subgroup g = ext.norm_class_group();
    std::vector<std::vector<int>> seen;
    for (const auto& c : all_classes(E)) {
        std::vector<int> nc = ext.norm(E.representative(c)).kummer_class();
        CHECK(g.contains(nc));
        seen.push_back(nc);
    }
    CHECK(Subgroup::span(M, ext.base().depth() + 1, seen) == g);
}

// Norm classes computed elementwise must match the class-level matrix.
void check_norm_matrix_route(const CyclicExtension& ext, std::mt19937& rng,
                             int trials) {
    const TowerField& E = ext.ext_field();
    int M = ext.base().class_modulus();
    auto nm = ext.norm_matrix();
    for (int t = 0; t < trials; ++t) {
        FieldElement e = sparse_element(E, rng);
        CHECK(ext.norm(e).kummer_class() ==
              apply_matrix(e.kummer_class(), nm, M));
    }
}

// Classes of embedded basis elements must match the class map rows.
void check_class_map_route(const CyclicExtension& ext) {
    const TowerField& F = ext.base();
    int d = F.depth();
    auto cm = ext.class_map();
    CHECK(ext.embed(F.zeta()).kummer_class() == cm[0]);
    for (int i = 1; i <= d; ++i)
        CHECK(ext.embed(F.uniformizer(i)).kummer_class() == cm[i]);
}

} // namespace

TEST_CASE("unramified quadratic extension of F_3((x1))") {
    TowerField F(3, 2, 1, 1, {6});
    CyclicExtension ext = CyclicExtension::make_unramified(F, 2);
    CHECK(ext.kind() == CyclicExtension::Kind::Unramified);
    CHECK(ext.degree() == 2);
    CHECK(ext.materialized());
    const TowerField& E = ext.ext_field();
    CHECK(E.q() == 9);
    CHECK(E.precision(1) == 6);

    // dlog of the embedded generator is 4, which dies mod 2
    auto cm = ext.class_map();
    CHECK(cm[0] == std::vector<int>{0, 0});
    CHECK(cm[1] == std::vector<int>{0, 1});
    check_class_map_route(ext);

    // N(zeta_9) = -1 generates F_3^*
    auto nm = ext.norm_matrix();
    CHECK(nm[0] == std::vector<int>{1, 0});
    CHECK(nm[1] == std::vector<int>{0, 0});
    CHECK(ext.norm_class_group() == Subgroup::span(2, 2, {{1, 0}}));
    check_norm_group_exhaustive(ext);

    std::mt19937 rng(77);
    for (int t = 0; t < 30; ++t) {
        FieldElement a = sparse_element(F, rng);
        FieldElement b = sparse_element(F, rng);
        CHECK(ext.embed(a * b) == ext.embed(a) * ext.embed(b));
        CHECK(ext.embed(a + b) == ext.embed(a) + ext.embed(b));
        CHECK(ext.norm(ext.embed(a)) == a * a);
        FieldElement u = sparse_element(E, rng), v = sparse_element(E, rng);
        CHECK(ext.norm(u * v) == ext.norm(u) * ext.norm(v));
        CHECK(ext.norm(ext.conj(u)) == ext.norm(u));
    }
    check_norm_matrix_route(ext, rng, 40);

    // {zeta, x1} restricts to 4{zeta_9, x1} = 0
    CHECK(ext.splits(CohClass::symbol(F, {{1, 0}, {0, 1}})));
    CHECK(ext.restrict_to_ext(CohClass::symbol(F, {{1, 0}, {0, 1}})).is_zero());
}

TEST_CASE("unramified extensions at depth 2 and the split formula") {
    TowerField F(3, 2, 1, 2, {4, 4});
    CyclicExtension ext = CyclicExtension::make_unramified(F, 2);
    CohClass a_unit = CohClass::symbol(F, {{1, 0, 0}, {0, 0, 1}});   // {zeta, x2}
    CohClass a_ram = CohClass::symbol(F, {{0, 1, 0}, {0, 0, 1}});    // {x1, x2}
    CHECK(ext.splits(a_unit));
    CHECK(!ext.splits(a_ram));
    CHECK(!ext.splits(a_unit + a_ram));
    check_class_map_route(ext);
    check_norm_group_exhaustive(ext);

    std::mt19937 rng(78);
    check_norm_matrix_route(ext, rng, 25);

    CyclicExtension id = CyclicExtension::make_unramified(F, 1);
    CHECK(id.ext_field() == F);
    FieldElement e = sparse_element(F, rng);
    CHECK(id.embed(e) == e);
    CHECK(id.norm(e) == e);
    CHECK(!id.splits(a_ram));
    CHECK(id.norm_class_group() == Subgroup::full(2, 3));
}

TEST_CASE("unramified formula mode beyond the field cap") {
    TowerField F(7, 3, 1, 1, {4});
    CyclicExtension ext = CyclicExtension::make_unramified(F, 9);
    CHECK(!ext.materialized());
    CHECK(error_name([&] { ext.ext_field(); }) == "PreconditionViolated");
    CHECK(error_name([&] { ext.embed(F.one()); }) == "PreconditionViolated");
    CHECK(error_name([&] { ext.class_map(); }) == "PreconditionViolated");
    // 9 kills every uniformizer class mod 3 and norms of units fill F^*
    CHECK(ext.norm_class_group() == Subgroup::span(3, 2, {{1, 0}}));
    CHECK(ext.splits(CohClass::symbol(F, {{1, 0}, {0, 1}})));
    CHECK(!ext.splits(CohClass::symbol(F, {{0, 1}})));

    // degree 2 still fits: 49 <= cap
    CHECK(CyclicExtension::make_unramified(F, 2).materialized());
}

TEST_CASE("kummer square root of the uniformizer") {
    TowerField F(3, 2, 1, 1, {4});
    CyclicExtension ext = CyclicExtension::make_kummer(F, F.uniformizer(1), 1);
    CHECK(ext.kind() == CyclicExtension::Kind::Kummer);
    CHECK(ext.degree() == 2);
    CHECK(ext.level() == 1);
    CHECK(ext.kummer_generator() == F.uniformizer(1));
    const TowerField& E = ext.ext_field();
    CHECK(E.precision(1) == 8);

    FieldElement T = E.uniformizer(1);
    CHECK(ext.embed(F.uniformizer(1)) == T * T);
    CHECK(ext.conj(T) == -T);
    CHECK(ext.norm(T) == -F.uniformizer(1));

    check_class_map_route(ext);
    check_norm_group_exhaustive(ext);
    std::mt19937 rng(79);
    for (int t = 0; t < 30; ++t) {
        FieldElement a = sparse_element(F, rng);
        FieldElement b = sparse_element(F, rng);
        CHECK(ext.embed(a * b) == ext.embed(a) * ext.embed(b));
        CHECK(ext.embed(a + b) == ext.embed(a) + ext.embed(b));
        CHECK(ext.norm(ext.embed(a)) == a * a);
        FieldElement u = sparse_element(E, rng), v = sparse_element(E, rng);
        CHECK(ext.norm(u * v) == ext.norm(u) * ext.norm(v));
        CHECK(ext.norm(ext.conj(u)) == ext.norm(u));
    }
    check_norm_matrix_route(ext, rng, 40);

    CHECK(ext.splits(CohClass::symbol(F, {{1, 0}, {0, 1}})));
}

TEST_CASE("kummer normalization picks a monomial generator") {
    TowerField F(5, 2, 2, 1, {6});
    FieldElement b = F.zeta() * F.uniformizer(1).pow(3);
    CyclicExtension ext = CyclicExtension::make_kummer(F, b, 2);
    CHECK(ext.degree() == 4);
    // class (1,3) scales by 3^-1 = 3 to (3,1)
    CHECK(ext.kummer_generator() == F.representative({3, 1}));
    const TowerField& E = ext.ext_field();
    CHECK(E.precision(1) == 24);

    FieldElement T = E.uniformizer(1);
    int z3inv = F.base()->inv(F.base()->pow(F.base()->zeta(), 3));
    CHECK(ext.embed(F.uniformizer(1)) == T.pow(4) * E.scalar(z3inv));

    auto cm = ext.class_map();
    CHECK(cm[1] == std::vector<int>{1, 0});  // x1 = T^4 zeta^-3

    // conjugate product over the degree-4 orbit: N(T) = -b_norm
    CHECK(ext.norm(T) == -F.representative({3, 1}));
    auto nm = ext.norm_matrix();
    CHECK(nm[0] == std::vector<int>{0, 0});
    CHECK(nm[1] == std::vector<int>{1, 1});  // -zeta^3 x1 = zeta^5 x1

    check_class_map_route(ext);
    check_norm_group_exhaustive(ext);
    std::mt19937 rng(80);
    for (int t = 0; t < 20; ++t) {
        FieldElement a = sparse_element(F, rng);
        CHECK(ext.norm(ext.embed(a)) == a.pow(4));
    }
    check_norm_matrix_route(ext, rng, 30);
}

TEST_CASE("kummer extension at the lower level of a depth-2 tower") {
    TowerField F(3, 2, 1, 2, {4, 4});
    CyclicExtension ext = CyclicExtension::make_kummer(F, F.uniformizer(1), 1);
    CHECK(ext.level() == 1);
    const TowerField& E = ext.ext_field();
    CHECK(E.precision(1) == 8);
    CHECK(E.precision(2) == 4);

    std::mt19937 rng(81);
    for (int t = 0; t < 25; ++t) {
        FieldElement a = sparse_element(F, rng);
        FieldElement b = sparse_element(F, rng);
        CHECK(ext.embed(a * b) == ext.embed(a) * ext.embed(b));
        CHECK(ext.norm(ext.embed(a)) == a * a);
    }
    check_class_map_route(ext);
    check_norm_group_exhaustive(ext);
    check_norm_matrix_route(ext, rng, 25);
}

TEST_CASE("kummer extension at the top level with a mixed monomial") {
    TowerField F(3, 2, 1, 2, {4, 4});
    FieldElement b = F.uniformizer(1) * F.uniformizer(2);
    CyclicExtension ext = CyclicExtension::make_kummer(F, b, 1);
    CHECK(ext.level() == 2);
    const TowerField& E = ext.ext_field();

    // x2 = T^2 / x1
    FieldElement expected =
        E.uniformizer(2).pow(2) *
        E.from_residue(E.residue_field().uniformizer(1).inv());
    CHECK(ext.embed(F.uniformizer(2)) == expected);

    check_class_map_route(ext);
    check_norm_group_exhaustive(ext);
    std::mt19937 rng(82);
    for (int t = 0; t < 25; ++t) {
        FieldElement a = sparse_element(F, rng);
        CHECK(ext.norm(ext.embed(a)) == a * a);
    }
    check_norm_matrix_route(ext, rng, 25);

    // {x1, x2} restricts to {-1, x1}, nonzero over F_3; adding {zeta, x2}
    // cancels it
    CohClass a_ram = CohClass::symbol(F, {{0, 1, 0}, {0, 0, 1}});
    CohClass a_unit = CohClass::symbol(F, {{1, 0, 0}, {0, 0, 1}});
    CHECK(!ext.splits(a_ram));
    CHECK(!ext.splits(a_unit));
    CHECK(ext.splits(a_ram + a_unit));
    CHECK(ext.splits(CohClass::symbol(F, {{0, 1, 0}, {1, 0, 1}})));
}

TEST_CASE("constant radicands fall back to unramified extensions") {
    TowerField F(3, 2, 1, 1, {4});
    CyclicExtension ext = CyclicExtension::make_kummer(F, F.zeta(), 1);
    CHECK(ext.kind() == CyclicExtension::Kind::Unramified);
    CHECK(ext.degree() == 2);
    CHECK(ext.ext_field().q() == 9);

    // an even uniformizer power does not change the class
    FieldElement b = F.zeta() * F.uniformizer(1).pow(2);
    CHECK(CyclicExtension::make_kummer(F, b, 1).kind() ==
          CyclicExtension::Kind::Unramified);

    TowerField G(5, 2, 2, 1, {4});
    // mod 4 class (1,2) has no single-level presentation ...
    FieldElement c = G.zeta() * G.uniformizer(1).pow(2);
    CHECK(error_name([&] { CyclicExtension::make_kummer(G, c, 2); }) ==
          "UnsupportedShape");
    // ... but its square-root layer is fine and is unramified
    CHECK(CyclicExtension::make_kummer(G, c, 1).kind() ==
          CyclicExtension::Kind::Unramified);
}

TEST_CASE("degenerate radicands and bad shapes are rejected") {
    TowerField F(3, 2, 1, 1, {4});
    TowerField G(5, 2, 2, 1, {4});
    CHECK(error_name([&] { CyclicExtension::make_kummer(F, F.one(), 1); }) ==
          "NotAField");
    CHECK(error_name([&] { CyclicExtension::make_kummer(F, F.zero(), 1); }) ==
          "NotAField");
    CHECK(error_name([&] {
              CyclicExtension::make_kummer(F, F.uniformizer(1).pow(2), 1);
          }) == "NotAField");
    CHECK(error_name([&] { CyclicExtension::make_kummer(G, G.zeta().pow(2), 2); }) ==
          "NotAField");
    CHECK(error_name([&] { CyclicExtension::make_kummer(F, F.uniformizer(1), 0); }) ==
          "PreconditionViolated");
    CHECK(error_name([&] { CyclicExtension::make_kummer(F, F.uniformizer(1), 2); }) ==
          "PreconditionViolated");
    CHECK(error_name([&] { CyclicExtension::make_kummer(F, G.uniformizer(1), 1); }) ==
          "FieldMismatch");
    CHECK(error_name([&] { CyclicExtension::make_unramified(F, 0); }) ==
          "PreconditionViolated");
}

TEST_CASE("towers of cyclic steps compose") {
    // two unramified squares against the direct degree-4 extension
    TowerField F(3, 2, 1, 1, {4});
    CyclicExtension e1 = CyclicExtension::make_unramified(F, 2);
    CyclicExtension e2 = CyclicExtension::make_unramified(e1.ext_field(), 2);
    std::vector<CyclicExtension> chain = {e1, e2};
    CHECK(chain_norm_class_group(chain) ==
          CyclicExtension::make_unramified(F, 4).norm_class_group());

    std::mt19937 rng(83);
    for (int t = 0; t < 20; ++t) {
        FieldElement a = sparse_element(F, rng);
        CHECK(chain_norm(chain, e2.embed(e1.embed(a))) == a.pow(4));
    }
    auto cm = chain_class_map(chain);
    for (size_t i = 0; i < cm.size(); ++i)
        CHECK(cm[i] == apply_matrix(e1.class_map()[i], e2.class_map(), 2));

    // two kummer squares against the direct fourth root
    TowerField G(5, 2, 2, 1, {8});
    CyclicExtension k1 = CyclicExtension::make_kummer(G, G.uniformizer(1), 1);
    CyclicExtension k2 =
        CyclicExtension::make_kummer(k1.ext_field(), k1.ext_field().uniformizer(1), 1);
    std::vector<CyclicExtension> kchain = {k1, k2};
    CyclicExtension direct = CyclicExtension::make_kummer(G, G.uniformizer(1), 2);
    CHECK(chain_norm_class_group(kchain) == direct.norm_class_group());
    CHECK(chain_norm_class_group(kchain) == Subgroup::span(4, 2, {{2, 1}}));

    for (int t = 0; t < 20; ++t) {
        FieldElement a = sparse_element(G, rng);
        CHECK(chain_norm(kchain, k2.embed(k1.embed(a))) == a.pow(4));
    }

    CHECK(error_name([&] { chain_class_map({e2, e1}); }) == "PreconditionViolated");
    CHECK(error_name([&] { chain_norm_class_group({}); }) == "PreconditionViolated");
}
