#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "perturbia/series.hpp"

using namespace perturbia;
using namespace perturbia::zerodim;

namespace {

FormalSeries random_series(std::mt19937_64& rng, Caps caps, bool zero_const) {
    FormalSeries s(caps);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    for (int a = 0; a <= caps.a; ++a)
        for (int b = 0; b <= caps.b; ++b)
            for (int c = 0; c <= caps.c; ++c) {
                if (zero_const && a == 0 && b == 0 && c == 0) continue;
                if (rng() % 3 == 0) s.set_coeff(a, b, c, rat(num(rng), den(rng)));
            }
    return s;
}

}  // namespace

TEST_CASE("ring basics and truncation") {
    Caps caps{2, 2, 0};
    FormalSeries x(caps);
    x.set_coeff(1, 0, 0, rat(1));
    FormalSeries y(caps);
    y.set_coeff(0, 1, 0, rat(1));
    auto p = (x + y) * (x + y);
    CHECK(p.coeff(2, 0, 0) == rat(1));
    CHECK(p.coeff(1, 1, 0) == rat(2));
    CHECK(p.coeff(0, 2, 0) == rat(1));
    // (x + y)^3 truncates away entirely at caps (2,2): x^3, x^2 y, ... all
    // either exceed cap a or cap b, except x y^2 and x^2 y which fit
    auto cube = p * (x + y);
    CHECK(cube.coeff(2, 1, 0) == rat(3));
    CHECK(cube.coeff(1, 2, 0) == rat(3));
    CHECK(cube.coeff(2, 2, 0) == rat(0));
}

TEST_CASE("exp and log are mutually inverse on random series") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 20; ++iter) {
        Caps caps{3, 3, 2};
        auto s = random_series(rng, caps, true);
        CHECK(s.exp().log() == s);
        auto t = FormalSeries::constant(caps, rat(1)) + s;
        CHECK(t.log().exp() == t);
    }
}

TEST_CASE("exp requires zero constant term, log requires unit constant term") {
    Caps caps{1, 1, 0};
    auto one = FormalSeries::constant(caps, rat(1));
    CHECK_THROWS_AS(one.exp(), DomainError);
    CHECK_THROWS_AS(FormalSeries(caps).log(), DomainError);
}

TEST_CASE("d/dj is a derivation") {
    std::mt19937_64 rng(7);
    Caps caps{2, 4, 1};
    for (int iter = 0; iter < 20; ++iter) {
        auto f = random_series(rng, caps, false);
        auto g = random_series(rng, caps, false);
        auto lhs = (f * g).derivative_j();
        auto rhs = f.derivative_j() * g + f * g.derivative_j();
        // the product rule can only disagree at the truncation boundary,
        // where (fg)' keeps terms whose factors were individually dropped;
        // compare strictly inside the caps
        for (int a = 0; a <= caps.a; ++a)
            for (int b = 0; b + 1 <= caps.b; ++b)
                for (int c = 0; c <= caps.c; ++c)
                    CHECK(lhs.coeff(a, b, c) == rhs.coeff(a, b, c));
    }
}

TEST_CASE("substitution replaces the second variable") {
    Caps caps{2, 4, 0};
    FormalSeries outer(caps);
    outer.set_coeff(0, 2, 0, rat(1));   // phi^2
    outer.set_coeff(1, 0, 0, rat(5));   // 5 lambda
    FormalSeries inner(caps);
    inner.set_coeff(0, 1, 0, rat(1));   // j
    inner.set_coeff(1, 1, 0, rat(-1));  // - lambda j
    auto got = outer.substitute_second(inner);
    CHECK(got.coeff(0, 2, 0) == rat(1));
    CHECK(got.coeff(1, 2, 0) == rat(-2));
    CHECK(got.coeff(2, 2, 0) == rat(1));
    CHECK(got.coeff(1, 0, 0) == rat(5));
}

TEST_CASE("hbar slices and evaluation at hbar = 1") {
    Caps caps{1, 1, 2};
    FormalSeries s(caps);
    s.set_coeff(1, 1, 0, rat(2));
    s.set_coeff(1, 1, 1, rat(3));
    s.set_coeff(0, 0, 2, rat(5));
    CHECK(s.hbar_slice(1).coeff(1, 1, 0) == rat(3));
    auto flat = s.eval_hbar_one();
    CHECK(flat.coeff(1, 1, 0) == rat(5));
    CHECK(flat.coeff(0, 0, 0) == rat(5));
}

TEST_CASE("caps mismatch is rejected") {
    FormalSeries a(Caps{1, 1, 1});
    FormalSeries b(Caps{2, 1, 1});
    CHECK_THROWS_AS(a + b, DomainError);
}
