#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rostlab/fq.hpp"

using rostlab::Error;
using rostlab::FqEmbedding;
using rostlab::FqField;

namespace {

std::string error_name(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.name();
    }
    return "";
}

// Independent multiplication oracle: schoolbook polynomial product
// reduced by the field's published modulus, no tables involved.
int schoolbook_mul(const FqField& F, int a, int b) {
    int p = F.p(), m = F.m();
    std::vector<int> da(m), db(m);
    for (int i = 0; i < m; ++i, a /= p) da[i] = a % p;
    for (int i = 0; i < m; ++i, b /= p) db[i] = b % p;
    std::vector<int> c(2 * m - 1, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) c[i + j] = (c[i + j] + da[i] * db[j]) % p;
    const auto& f = F.modulus();
    for (int i = 2 * m - 2; i >= m; --i) {
        int t = c[i];
        c[i] = 0;
        for (int j = 0; j < m; ++j)
            c[i - m + j] = (c[i - m + j] - t * f[j] % p + p) % p;
    }
    int enc = 0;
    for (int i = m - 1; i >= 0; --i) enc = enc * p + c[i];
    return enc;
}

} // namespace

TEST_CASE("canonical primitive elements of prime fields") {
    CHECK(FqField::get(2)->zeta() == 1);
    CHECK(FqField::get(3)->zeta() == 2);
    CHECK(FqField::get(5)->zeta() == 2);
    CHECK(FqField::get(7)->zeta() == 3);
    CHECK(FqField::get(13)->zeta() == 2);
}

TEST_CASE("canonical construction of F4 and F9") {
    auto F4 = FqField::get(4);
    CHECK(F4->p() == 2);
    CHECK(F4->m() == 2);
    CHECK(F4->modulus() == std::vector<int>{1, 1, 1});  // t^2 + t + 1
    CHECK(F4->zeta() == 2);

    auto F9 = FqField::get(9);
    CHECK(F9->modulus() == std::vector<int>{1, 0, 1});  // t^2 + 1
    CHECK(F9->zeta() == 4);                             // t + 1
}

TEST_CASE("table arithmetic matches the schoolbook oracle") {
    for (int q : {9, 16, 25, 27}) {
        auto F = FqField::get(q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                CHECK(F->mul(a, b) == schoolbook_mul(*F, a, b));
    }
}

TEST_CASE("addition group structure") {
    auto F = FqField::get(9);
    for (int a = 0; a < 9; ++a) {
        CHECK(F->add(a, 0) == a);
        CHECK(F->add(a, F->neg(a)) == 0);
        CHECK(F->sub(a, a) == 0);
        for (int b = 0; b < 9; ++b) CHECK(F->add(a, b) == F->add(b, a));
    }
}

TEST_CASE("inverses and division") {
    auto F = FqField::get(9);
    for (int a = 1; a < 9; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
    CHECK(error_name([&] { F->inv(0); }) == "DivisionByZero");
    CHECK(error_name([&] { F->div(3, 0); }) == "DivisionByZero");
    CHECK(error_name([&] { F->pow(0, -2); }) == "DivisionByZero");
}

TEST_CASE("discrete log roundtrip") {
    auto F = FqField::get(9);
    for (int a = 1; a < 9; ++a) {
        CHECK(F->pow(F->zeta(), F->dlog(a)) == a);
        CHECK(F->dlog(F->pow(F->zeta(), F->dlog(a))) == F->dlog(a));
    }
    CHECK(F->dlog(1) == 0);
    CHECK(error_name([&] { F->dlog(0); }) == "NotAUnit");
}

TEST_CASE("powers") {
    auto F = FqField::get(25);
    for (int a = 1; a < 25; ++a) {
        CHECK(F->pow(a, 24) == 1);
        CHECK(F->pow(a, 0) == 1);
        CHECK(F->pow(a, -1) == F->inv(a));
        CHECK(F->pow(a, 26) == F->mul(a, F->mul(a, F->pow(a, 24))));
    }
    CHECK(F->pow(0, 5) == 0);
    CHECK(F->pow(0, 0) == 1);
}

TEST_CASE("squares match the exhaustive square set") {
    for (int q : {9, 25, 16}) {
        auto F = FqField::get(q);
        std::set<int> squares;
        for (int a = 0; a < q; ++a) squares.insert(F->mul(a, a));
        for (int a = 0; a < q; ++a) CHECK(F->is_square(a) == (squares.count(a) != 0));
    }
}

TEST_CASE("embedding F3 into F9") {
    auto E = FqEmbedding::get(3, 9);
    auto F3 = E->small();
    auto F9 = E->big();

    for (int a = 0; a < 3; ++a) {
        CHECK(E->project(E->embed(a)) == a);
        for (int b = 0; b < 3; ++b) {
            CHECK(E->embed(F3->mul(a, b)) == F9->mul(E->embed(a), E->embed(b)));
            CHECK(E->embed(F3->add(a, b)) == F9->add(E->embed(a), E->embed(b)));
        }
    }

    int count = 0;
    for (int A = 0; A < 9; ++A)
        if (E->in_subfield(A)) ++count;
    CHECK(count == 3);

    // Frobenius fixes exactly the subfield.
    for (int A = 0; A < 9; ++A)
        CHECK((F9->frobenius(A) == A) == E->in_subfield(A));
}

TEST_CASE("norm down to the base field") {
    auto E = FqEmbedding::get(3, 9);
    auto F9 = E->big();

    // Oracle: the norm is the product of the two Frobenius conjugates.
    for (int A = 0; A < 9; ++A) {
        int conj = F9->mul(A, F9->frobenius(A));
        CHECK(E->embed(E->norm(A)) == conj);
    }

    std::set<int> image;
    for (int A = 1; A < 9; ++A) image.insert(E->norm(A));
    CHECK(image == std::set<int>{1, 2});  // norm is onto the units

    for (int A = 0; A < 9; ++A)
        for (int B = 0; B < 9; ++B)
            CHECK(E->norm(F9->mul(A, B)) == E->small()->mul(E->norm(A), E->norm(B)));
}

TEST_CASE("field registry returns shared instances") {
    CHECK(FqField::get(9).get() == FqField::get(9).get());
    CHECK(FqEmbedding::get(3, 9).get() == FqEmbedding::get(3, 9).get());
}

TEST_CASE("rejects invalid sizes") {
    CHECK(error_name([] { FqField::get(6); }) == "NotAPrimePower");
    CHECK(error_name([] { FqField::get(12); }) == "NotAPrimePower");
    CHECK(error_name([] { FqField::get(0); }) == "NotAPrimePower");
    CHECK(error_name([] { FqField::get(1 << 17); }) == "FieldTooLarge");
    CHECK(error_name([] { FqEmbedding::get(4, 9); }) == "FieldMismatch");
    CHECK(error_name([] { FqEmbedding::get(9, 27); }) == "FieldMismatch");
}
