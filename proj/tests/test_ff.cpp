#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mackeylab/ff.hpp"
#include "oracles.hpp"

using namespace mackeylab::ff;

namespace {

Mat random_mat(std::mt19937_64& rng, Fp f, uint32_t r, uint32_t c) {
    Mat m(f, r, c);
    for (auto& v : m.a) v = uint32_t(rng() % f.p);
    return m;
}

Mat from_rows(Fp f, std::vector<std::vector<uint32_t>> rows) {
    Mat m(f, uint32_t(rows.size()), rows.empty() ? 0 : uint32_t(rows[0].size()));
    for (uint32_t i = 0; i < m.rows; ++i)
        for (uint32_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j] % f.p;
    return m;
}

}  // namespace

TEST_CASE("field arithmetic over F_7") {
    Fp f = make_field(7);
    CHECK(f.add(3, 5) == 1);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.neg(0) == 0);
    CHECK(f.neg(3) == 4);
    CHECK(f.mul(4, 5) == 6);
    CHECK(f.pow(3, 6) == 1);   // Fermat
    CHECK(f.pow(3, 0) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.reduce_int(-3) == 4);
    CHECK(f.reduce_int(700) == 0);
    for (uint32_t a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
}

TEST_CASE("make_field validates the characteristic") {
    CHECK_THROWS_AS(make_field(1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(4), std::invalid_argument);
    CHECK_THROWS_AS(make_field(9), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1u << 16), std::invalid_argument);
    CHECK(make_field(2).p == 2);
    CHECK(make_field(65521).p == 65521);
}

TEST_CASE("matrix product, frozen and against the naive loop") {
    Fp f3 = make_field(3);
    Mat a = from_rows(f3, {{1, 2}, {0, 1}});
    Mat b = from_rows(f3, {{2, 1}, {1, 2}});
    CHECK(mul(a, b) == from_rows(f3, {{1, 2}, {1, 2}}));

    std::mt19937_64 rng(11);
    for (uint32_t p : {2u, 3u, 5u}) {
        Fp f = make_field(p);
        for (int it = 0; it < 30; ++it) {
            uint32_t n = 1 + rng() % 6, m = 1 + rng() % 6, k = 1 + rng() % 6;
            Mat x = random_mat(rng, f, n, m);
            Mat y = random_mat(rng, f, m, k);
            CHECK(mul(x, y) == oracle::mul_naive(x, y));
            Mat z = random_mat(rng, f, k, 1 + rng() % 6);
            CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
            CHECK(transpose(mul(x, y)) == mul(transpose(y), transpose(x)));
        }
    }
}

TEST_CASE("rank agrees with minor expansion") {
    Fp f5 = make_field(5);
    CHECK(rank(Mat::identity(f5, 4)) == 4);
    CHECK(rank(Mat::zero(f5, 3, 2)) == 0);
    CHECK(rank(from_rows(f5, {{1, 2}, {2, 4}})) == 1);

    std::mt19937_64 rng(12);
    for (uint32_t p : {2u, 3u}) {
        Fp f = make_field(p);
        for (int it = 0; it < 60; ++it) {
            Mat m = random_mat(rng, f, 1 + rng() % 4, 1 + rng() % 4);
            CHECK(rank(m) == oracle::rank_by_minors(m));
        }
    }
}

TEST_CASE("rref is reduced and spans the same rows") {
    std::mt19937_64 rng(13);
    for (uint32_t p : {2u, 3u, 5u}) {
        Fp f = make_field(p);
        for (int it = 0; it < 40; ++it) {
            Mat m = random_mat(rng, f, 1 + rng() % 5, 1 + rng() % 5);
            Rref r = rref(m);
            REQUIRE(r.m.rows == r.rank);
            for (uint32_t i = 0; i + 1 < r.rank; ++i) CHECK(r.pivots[i] < r.pivots[i + 1]);
            // pivot columns are unit vectors
            for (uint32_t i = 0; i < r.rank; ++i)
                for (uint32_t t = 0; t < r.rank; ++t)
                    CHECK(r.m.at(t, r.pivots[i]) == (t == i ? 1u : 0u));
            for (uint32_t i = 0; i < m.rows; ++i) CHECK(in_row_space(r, row(m, i)));
            CHECK(rank(vstack(m, r.m)) == r.rank);
            // determinism
            CHECK(rref(m).m == r.m);
        }
    }
}

TEST_CASE("kernel rows annihilate and span the nullspace") {
    std::mt19937_64 rng(14);
    for (uint32_t p : {2u, 3u, 5u}) {
        Fp f = make_field(p);
        for (int it = 0; it < 40; ++it) {
            Mat m = random_mat(rng, f, 1 + rng() % 5, 1 + rng() % 5);
            Mat k = kernel(m);
            CHECK(k.rows == m.cols - rank(m));
            if (k.rows) {
                CHECK(mul(m, transpose(k)).is_zero());
                CHECK(rank(k) == k.rows);
            }
            Mat lk = left_kernel(m);
            CHECK(lk.rows == m.rows - rank(m));
            if (lk.rows) CHECK(mul(lk, m).is_zero());
        }
    }
}

TEST_CASE("solve recovers a solution exactly when one exists") {
    std::mt19937_64 rng(15);
    for (uint32_t p : {2u, 3u, 5u}) {
        Fp f = make_field(p);
        for (int it = 0; it < 40; ++it) {
            uint32_t n = 1 + rng() % 5, m = 1 + rng() % 5, k = 1 + rng() % 3;
            Mat a = random_mat(rng, f, n, m);
            Mat x = random_mat(rng, f, m, k);
            Mat b = mul(a, x);
            auto s = solve(a, b);
            REQUIRE(s.has_value());
            CHECK(mul(a, *s) == b);
        }
    }
}

TEST_CASE("solve reports inconsistency") {
    Fp f = make_field(3);
    Mat a = from_rows(f, {{1}, {1}});
    Mat b = from_rows(f, {{1}, {0}});
    CHECK_FALSE(solve(a, b).has_value());
}

TEST_CASE("solve_left roundtrip") {
    std::mt19937_64 rng(16);
    Fp f = make_field(3);
    for (int it = 0; it < 30; ++it) {
        uint32_t n = 1 + rng() % 5, m = 1 + rng() % 5, k = 1 + rng() % 3;
        Mat a = random_mat(rng, f, n, m);
        Mat x = random_mat(rng, f, k, n);
        Mat b = mul(x, a);
        auto s = solve_left(a, b);
        REQUIRE(s.has_value());
        CHECK(mul(*s, a) == b);
    }
}

TEST_CASE("inverse") {
    std::mt19937_64 rng(17);
    for (uint32_t p : {2u, 5u}) {
        Fp f = make_field(p);
        int found = 0;
        for (int it = 0; it < 60 && found < 20; ++it) {
            Mat a = random_mat(rng, f, 4, 4);
            auto ai = inverse(a);
            CHECK(ai.has_value() == is_invertible(a));
            if (!ai) continue;
            ++found;
            CHECK(mul(a, *ai) == Mat::identity(f, 4));
            CHECK(mul(*ai, a) == Mat::identity(f, 4));
        }
        CHECK(found >= 10);  // plenty of invertibles among random 4x4
    }
    Fp f = make_field(3);
    CHECK_FALSE(inverse(from_rows(f, {{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("subspace operations against exhaustive enumeration") {
    std::mt19937_64 rng(18);
    for (uint32_t p : {2u, 3u}) {
        Fp f = make_field(p);
        for (int it = 0; it < 25; ++it) {
            uint32_t cols = 2 + rng() % 3;
            Mat x = random_mat(rng, f, 1 + rng() % 3, cols);
            Mat y = random_mat(rng, f, 1 + rng() % 3, cols);
            auto sx = oracle::span_enumerate(x);
            auto sy = oracle::span_enumerate(y);

            auto ssum = oracle::span_enumerate(subspace_sum(x, y));
            std::set<std::vector<uint32_t>> expect_sum = oracle::span_enumerate(vstack(x, y));
            CHECK(ssum == expect_sum);

            Mat inter = subspace_intersect(x, y);
            auto sinter = oracle::span_enumerate(inter);
            std::set<std::vector<uint32_t>> expect_inter;
            for (const auto& v : sx)
                if (sy.count(v)) expect_inter.insert(v);
            CHECK(sinter == expect_inter);

            CHECK(rank(x) + rank(y) == rank(subspace_sum(x, y)) + rank(inter));
            CHECK(subspace_contains(x, inter));
            CHECK(subspace_contains(y, inter));
            CHECK(subspace_contains(subspace_sum(x, y), x));
            CHECK(subspace_equal(x, row_space(x)));
        }
    }
}

TEST_CASE("RowAccum matches batch elimination") {
    std::mt19937_64 rng(19);
    for (uint32_t p : {2u, 3u, 5u}) {
        Fp f = make_field(p);
        for (int it = 0; it < 30; ++it) {
            Mat m = random_mat(rng, f, 1 + rng() % 6, 1 + rng() % 5);
            RowAccum acc(f, m.cols);
            for (uint32_t i = 0; i < m.rows; ++i) {
                bool grew = acc.insert_row(m, i);
                Mat prefix = take_rows(m, [&] {
                    std::vector<uint32_t> idx(i + 1);
                    for (uint32_t t = 0; t <= i; ++t) idx[t] = t;
                    return idx;
                }());
                CHECK(acc.dim() == rank(prefix));
                CHECK(grew == (rank(prefix) != (i ? rank(take_rows(m, [&] {
                                  std::vector<uint32_t> idx(i);
                                  for (uint32_t t = 0; t < i; ++t) idx[t] = t;
                                  return idx;
                              }())) : 0u)));
            }
            CHECK(subspace_equal(acc.basis(), m));
            Rref r = rref(m);
            Mat probe = random_mat(rng, f, 1, m.cols);
            std::vector<uint32_t> v = probe.a;
            CHECK(acc.reduces_to_zero(v) == in_row_space(r, probe));
        }
    }
}

TEST_CASE("stacking and embedding") {
    Fp f = make_field(3);
    Mat a = from_rows(f, {{1, 2}});
    Mat b = from_rows(f, {{2, 2}});
    CHECK(vstack(a, b) == from_rows(f, {{1, 2}, {2, 2}}));
    CHECK(hstack(a, b) == from_rows(f, {{1, 2, 2, 2}}));
    CHECK(direct_sum(a, b) == from_rows(f, {{1, 2, 0, 0}, {0, 0, 2, 2}}));
    CHECK(embed(a, 2, 3, 1, 1) == from_rows(f, {{0, 0, 0}, {0, 1, 2}}));
    CHECK(take_cols(from_rows(f, {{1, 2, 0}, {0, 1, 2}}), {2, 0}) ==
          from_rows(f, {{0, 1}, {2, 0}}));
}
