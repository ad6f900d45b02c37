#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mackeylab/poly.hpp"
#include "oracles.hpp"

using namespace mackeylab::poly;
using mackeylab::ff::Fp;
using mackeylab::ff::Mat;
using mackeylab::ff::make_field;

namespace {

FpPoly random_poly(std::mt19937_64& rng, Fp f, uint32_t maxdeg) {
    std::vector<uint32_t> c(1 + rng() % (maxdeg + 1));
    for (auto& v : c) v = uint32_t(rng() % f.p);
    return make_poly(f, std::move(c));
}

Mat from_rows(Fp f, std::vector<std::vector<uint32_t>> rows) {
    Mat m(f, uint32_t(rows.size()), uint32_t(rows[0].size()));
    for (uint32_t i = 0; i < m.rows; ++i)
        for (uint32_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j] % f.p;
    return m;
}

std::vector<std::pair<std::vector<uint32_t>, uint32_t>> as_lists(const std::vector<Factor>& fs) {
    std::vector<std::pair<std::vector<uint32_t>, uint32_t>> out;
    for (const auto& f : fs) out.push_back({f.p.c, f.mult});
    return out;
}

}  // namespace

TEST_CASE("construction normalizes coefficients") {
    Fp f = make_field(3);
    FpPoly p = make_poly(f, {3, 4, 5, 0, 0});
    CHECK(p.c == std::vector<uint32_t>{0, 1, 2});
    CHECK(p.deg() == 2);
    CHECK(zero_poly(f).is_zero());
    CHECK(one_poly(f).is_one());
    CHECK(x_poly(f).deg() == 1);
}

TEST_CASE("divmod invariant") {
    std::mt19937_64 rng(21);
    for (uint32_t pc : {2u, 3u, 5u}) {
        Fp f = make_field(pc);
        for (int it = 0; it < 60; ++it) {
            FpPoly a = random_poly(rng, f, 8);
            FpPoly b = random_poly(rng, f, 4);
            if (b.is_zero()) continue;
            auto [q, r] = divmod(a, b);
            CHECK(add(mul(q, b), r) == a);
            CHECK((r.is_zero() || r.deg() < b.deg()));
        }
    }
    Fp f = make_field(2);
    CHECK_THROWS_AS(divmod(one_poly(f), zero_poly(f)), std::domain_error);
}

TEST_CASE("gcd divides both arguments and sees common factors") {
    std::mt19937_64 rng(22);
    Fp f = make_field(3);
    for (int it = 0; it < 40; ++it) {
        FpPoly a = random_poly(rng, f, 5), b = random_poly(rng, f, 5);
        FpPoly h = random_poly(rng, f, 3);
        if (h.is_zero()) continue;
        FpPoly g = gcd(mul(a, h), mul(b, h));
        if (mul(a, h).is_zero() && mul(b, h).is_zero()) continue;
        CHECK(divmod(g, monic(h)).r.is_zero());
        if (!a.is_zero()) CHECK(divmod(mul(a, h), g).r.is_zero());
        if (!b.is_zero()) CHECK(divmod(mul(b, h), g).r.is_zero());
        CHECK(g.c.back() == 1);
    }
}

TEST_CASE("eval and powmod, frozen") {
    Fp f5 = make_field(5);
    CHECK(eval(make_poly(f5, {3, 2, 1}), 4) == 2);  // 16+8+3 = 27
    Fp f2 = make_field(2);
    FpPoly q = make_poly(f2, {1, 1, 0, 1});  // x^3+x+1
    CHECK(powmod(x_poly(f2), 8, q) == x_poly(f2));  // Frobenius cycles in F_8
    CHECK(eval(derivative(make_poly(f5, {1, 0, 0, 2})), 1) == 1);  // (2x^3)' = 6x^2 = x^2
}

TEST_CASE("factor, frozen cases") {
    Fp f2 = make_field(2);
    Fp f3 = make_field(3);
    Fp f5 = make_field(5);

    // x^4+x+1 stays whole over F_2
    auto r = factor(make_poly(f2, {1, 1, 0, 0, 1}));
    CHECK(as_lists(r) == decltype(as_lists(r)){{{1, 1, 0, 0, 1}, 1}});

    // x^2+1 = (x+1)^2 over F_2
    r = factor(make_poly(f2, {1, 0, 1}));
    CHECK(as_lists(r) == decltype(as_lists(r)){{{1, 1}, 2}});

    // x^3 (x^2+x+1)^2 over F_2
    FpPoly s = make_poly(f2, {1, 1, 1});
    r = factor(mul(mul(s, s), make_poly(f2, {0, 0, 0, 1})));
    CHECK(as_lists(r) == decltype(as_lists(r)){{{0, 1}, 3}, {{1, 1, 1}, 2}});

    // (x^2+1)^3 over F_3: derivative vanishes, p-th root path
    FpPoly t = make_poly(f3, {1, 0, 1});
    r = factor(mul(mul(t, t), t));
    CHECK(as_lists(r) == decltype(as_lists(r)){{{1, 0, 1}, 3}});

    // x^3 - x splits into the three linear factors over F_3
    r = factor(make_poly(f3, {0, 2, 0, 1}));
    CHECK(as_lists(r) == decltype(as_lists(r)){{{0, 1}, 1}, {{1, 1}, 1}, {{2, 1}, 1}});

    // x^2+2 has no root mod 5
    r = factor(make_poly(f5, {2, 0, 1}));
    CHECK(as_lists(r) == decltype(as_lists(r)){{{2, 0, 1}, 1}});
}

TEST_CASE("factor output does not depend on the seed") {
    Fp f3 = make_field(3);
    // x (x+1)^2 (x^2+1) (x^2+x+2)
    FpPoly xp = x_poly(f3);
    FpPoly x1 = make_poly(f3, {1, 1});
    FpPoly q1 = make_poly(f3, {1, 0, 1});
    FpPoly q2 = make_poly(f3, {2, 1, 1});
    FpPoly prod = mul(mul(mul(mul(xp, x1), x1), q1), q2);
    auto a = factor(prod, 1);
    auto b = factor(prod, 999);
    auto c = factor(prod);
    CHECK(as_lists(a) == as_lists(b));
    CHECK(as_lists(a) == as_lists(c));
    CHECK(as_lists(a) == decltype(as_lists(a)){
                             {{0, 1}, 1}, {{1, 1}, 2}, {{1, 0, 1}, 1}, {{2, 1, 1}, 1}});
}

TEST_CASE("factor reconstructs the input, factors irreducible") {
    std::mt19937_64 rng(23);
    for (uint32_t pc : {2u, 3u}) {
        Fp f = make_field(pc);
        for (int it = 0; it < 40; ++it) {
            FpPoly a = random_poly(rng, f, 7);
            if (a.deg() == 0) continue;
            auto fs = factor(a);
            FpPoly prod = make_poly(f, {a.c.back()});  // leading coefficient
            for (const auto& [p, m] : fs) {
                CHECK(oracle::poly_irreducible(p));
                CHECK(p.c.back() == 1);
                CHECK(m >= 1);
                for (uint32_t i = 0; i < m; ++i) prod = mul(prod, p);
            }
            CHECK(prod == a);
        }
    }
}

TEST_CASE("min_poly, frozen") {
    Fp f2 = make_field(2);
    Fp f3 = make_field(3);

    // companion matrix of x^3+x+1
    Mat c = from_rows(f2, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
    CHECK(min_poly(c) == make_poly(f2, {1, 1, 0, 1}));

    // nilpotent single block
    Mat j(f3, 4, 4);
    for (uint32_t i = 0; i + 1 < 4; ++i) j.at(i, i + 1) = 1;
    CHECK(min_poly(j) == make_poly(f3, {0, 0, 0, 0, 1}));

    CHECK(min_poly(Mat::identity(f3, 3)) == make_poly(f3, {2, 1}));

    Mat d = from_rows(f3, {{1, 0}, {0, 2}});
    CHECK(min_poly(d) == make_poly(f3, {2, 0, 1}));
}

TEST_CASE("order_poly along a nilpotent chain") {
    Fp f2 = make_field(2);
    Mat j(f2, 4, 4);
    for (uint32_t i = 0; i + 1 < 4; ++i) j.at(i, i + 1) = 1;  // e_k -> e_{k-1}
    Mat e4(f2, 1, 4);
    e4.at(0, 3) = 1;
    CHECK(order_poly(j, e4) == make_poly(f2, {0, 0, 0, 0, 1}));
    Mat e1(f2, 1, 4);
    e1.at(0, 0) = 1;
    CHECK(order_poly(j, e1) == x_poly(f2));
}

TEST_CASE("min_poly annihilates, across random matrices") {
    std::mt19937_64 rng(24);
    for (uint32_t pc : {2u, 3u, 5u}) {
        Fp f = make_field(pc);
        for (int it = 0; it < 25; ++it) {
            uint32_t n = 1 + rng() % 5;
            Mat m(f, n, n);
            for (auto& v : m.a) v = uint32_t(rng() % f.p);
            FpPoly mp = min_poly(m);
            CHECK(mp.c.back() == 1);
            CHECK(mp.deg() >= 1);
            CHECK(mp.deg() <= n);
            CHECK(eval_mat(mp, m).is_zero());
            // no proper monic divisor of smaller degree annihilates
            for (const auto& [p, mult] : factor(mp)) {
                FpPoly reduced = divmod(mp, p).q;
                CHECK_FALSE(eval_mat(reduced, m).is_zero());
            }
        }
    }
}

TEST_CASE("ext_gcd: bezout identity across random pairs") {
    std::mt19937_64 rng(77);
    for (uint32_t pc : {2u, 3u, 5u}) {
        Fp f = make_field(pc);
        for (int it = 0; it < 40; ++it) {
            auto rand_poly = [&](uint32_t maxdeg) {
                std::vector<uint32_t> c(1 + rng() % (maxdeg + 1));
                for (auto& v : c) v = uint32_t(rng() % f.p);
                return make_poly(f, std::move(c));
            };
            FpPoly a = rand_poly(6), b = rand_poly(6);
            if (a.is_zero() && b.is_zero()) continue;
            ExtGcd e = ext_gcd(a, b);
            CHECK(e.g == gcd(a, b));
            CHECK(add(mul(e.u, a), mul(e.v, b)) == e.g);
        }
    }
}

TEST_CASE("char_poly, frozen") {
    Fp f2 = make_field(2);
    Fp f3 = make_field(3);

    Mat c = from_rows(f2, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
    CHECK(char_poly(c) == make_poly(f2, {1, 1, 0, 1}));

    Mat j(f3, 4, 4);
    for (uint32_t i = 0; i + 1 < 4; ++i) j.at(i, i + 1) = 1;
    CHECK(char_poly(j) == make_poly(f3, {0, 0, 0, 0, 1}));

    // (x-1)^2 over F_3
    CHECK(char_poly(Mat::identity(f3, 2)) == make_poly(f3, {1, 1, 1}));
    // (x-1)(x-2) over F_3
    Mat d = from_rows(f3, {{1, 0}, {0, 2}});
    CHECK(char_poly(d) == make_poly(f3, {2, 0, 1}));

    CHECK(char_poly(Mat(f2, 0, 0)) == one_poly(f2));
}

TEST_CASE("char_poly: degree n, annihilated by min_poly divisibility") {
    std::mt19937_64 rng(31);
    for (uint32_t pc : {2u, 3u, 5u}) {
        Fp f = make_field(pc);
        for (int it = 0; it < 30; ++it) {
            uint32_t n = 1 + rng() % 6;
            Mat m(f, n, n);
            for (auto& v : m.a) v = uint32_t(rng() % f.p);
            FpPoly cp = char_poly(m);
            CHECK(cp.deg() == n);
            CHECK(cp.c.back() == 1);
            // min_poly divides char_poly (Cayley-Hamilton)
            CHECK(divmod(cp, min_poly(m)).r.is_zero());
            // trace appears as -coefficient of x^{n-1}
            uint32_t tr = 0;
            for (uint32_t i = 0; i < n; ++i) tr = f.add(tr, m.at(i, i));
            CHECK(cp.c[n - 1] == f.neg(tr));
        }
    }
}
