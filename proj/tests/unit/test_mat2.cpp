#include <doctest.h>

#include <random>

#include "gl2dc/mat2.hpp"

using namespace gl2dc;

namespace {

// independent Smith oracle: explicit row/column reduction over Z/p^n
SmithForm smith_oracle(const Mat2& g, const Int& p, int n) {
    Int m = g.mod;
    Int e[2][2] = {{g.a, g.b}, {g.c, g.d}};
    auto v = [&](const Int& x) { return val_cap(x, p, n); };
    long best = n;
    int bi = 0, bj = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (v(e[i][j]) < best) {
                best = v(e[i][j]);
                bi = i;
                bj = j;
            }
    if (best >= n) return {long(n), long(n)};
    if (bi == 1) {
        std::swap(e[0][0], e[1][0]);
        std::swap(e[0][1], e[1][1]);
    }
    if (bj == 1) {
        std::swap(e[0][0], e[0][1]);
        std::swap(e[1][0], e[1][1]);
    }
    long e1 = v(e[0][0]);
    Int pe1 = pow_int(p, e1);
    Int ui = inv_mod(mod_reduce(e[0][0] / pe1, m), m);
    // row op: R1 -= (e10/e00) R0, then column op: C1 -= (e01/e00) C0
    Int fr = mod_reduce((e[1][0] / pe1) * ui, m);
    e[1][1] = mod_reduce(e[1][1] - fr * e[0][1], m);
    e[1][0] = mod_reduce(e[1][0] - fr * e[0][0], m);
    REQUIRE(e[1][0] == 0);
    // the column op now only zeroes e01; e11 is final
    long e2 = v(e[1][1]);
    REQUIRE(e2 >= e1);
    return {e1, e2};
}

}  // namespace

TEST_CASE("matrix arithmetic basics") {
    Mat2 g(2, 6, 3, 2, 9);
    CHECK(Mat2::identity(9) * g == g);
    CHECK(g.det() == 4);  // 2*2 - 6*3 = -14 = 4 mod 9
    CHECK(mat_pow(g, 1) == g);
    CHECK(mat_pow(g, 0) == Mat2::identity(9));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        Mat2 h(rng() % 9, rng() % 9, rng() % 9, rng() % 9, 9);
        if (!h.is_invertible()) continue;
        CHECK(h * h.inverse() == Mat2::identity(9));
        for (int k = 1; k <= 5; ++k)
            CHECK(mat_pow(h, k).det() == pow_mod(h.det(), k, 9));
    }
}

TEST_CASE("mu depth") {
    CHECK(mu_depth(Mat2::scalar(7, pow_int(5, 4)), 5, 4) == 4);
    CHECK(mu_depth(Mat2(2, 20, 5, 2, 625), 5, 4) == 1);
    CHECK(mu_depth(Mat2(0, 1, -313, -1, 9), 3, 2) == 0);
    // conjugation invariance
    std::mt19937_64 rng(11);
    Int m = 27;
    for (int t = 0; t < 200; ++t) {
        Mat2 g(rng() % 27, rng() % 27, rng() % 27, rng() % 27, m);
        Mat2 h(rng() % 27, rng() % 27, rng() % 27, rng() % 27, m);
        if (!h.is_invertible()) continue;
        CHECK(mu_depth(h * g * h.inverse(), 3, 3) == mu_depth(g, 3, 3));
    }
}

TEST_CASE("Smith forms") {
    Int m27 = 27;
    CHECK(smith(Mat2(0, 0, 0, 0, m27), 3, 3) == SmithForm{3, 3});
    CHECK(smith(Mat2(3, 0, 0, 9, m27), 3, 3) == SmithForm{1, 2});
    // I'_1(alpha) with v_alpha > mu: alpha = 26 mod 625 has v_alpha = 2
    Mat2 g(26, 0, 5, 26, 625);
    Mat2 id = Mat2::identity(g.mod);
    CHECK(smith(mat_sub(g, id), 5, 4) == SmithForm{1, 3});
    CHECK(smith(mat_sub(mat_pow(g, 5), id), 5, 4) == SmithForm{2, 4});

    // exhaustive agreement with explicit row/column reduction
    for (auto [pp, nn] : {std::pair<int, int>{3, 2}, {5, 2}}) {
        Int p(pp);
        int n = nn;
        Int m = pow_int(p, n);
        long mm = m.get_si();
        for (long a = 0; a < mm; ++a)
            for (long b = 0; b < mm; ++b)
                for (long c = 0; c < mm; ++c)
                    for (long d = 0; d < mm; ++d) {
                        Mat2 x(a, b, c, d, m);
                        CHECK(smith(x, p, n) == smith_oracle(x, p, n));
                    }
    }
}

TEST_CASE("CRT split and join") {
    Mat2 g(2, 42, 21, 20, 63);
    auto parts = crt_split(g);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == Mat2(2, 6, 3, 2, 9));
    CHECK(parts[1] == Mat2(2, 0, 0, 6, 7));
    CHECK(crt_join(parts) == g);
    auto id = crt_split(Mat2::identity(63));
    CHECK(id[0] == Mat2::identity(9));
    CHECK(id[1] == Mat2::identity(7));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        Mat2 h(rng() % 63, rng() % 63, rng() % 63, rng() % 63, 63);
        CHECK(crt_join(crt_split(h)) == h);
    }
}

TEST_CASE("matrix orders") {
    CHECK(matrix_order(Mat2::identity(49), 7, 2) == 1);
    // companion of x^2 + x + 3 mod 7 (brute-force oracle below)
    Mat2 frob3(0, -3, 1, -1, 7);
    Int o = matrix_order(frob3, 7, 1);
    CHECK(o == 48);
    Mat2 acc = Mat2::identity(7);
    int brute = 0;
    for (int k = 1; k <= 2016; ++k) {
        acc = acc * frob3;
        if (acc == Mat2::identity(7)) {
            brute = k;
            break;
        }
    }
    CHECK(brute == 48);
    CHECK(matrix_order(Mat2(0, -1, 1, 0, 9), 3, 2) == 4);
    CHECK(matrix_order(Mat2(0, -1, 1, 0, 63)) == 4);
}

TEST_CASE("group orders") {
    CHECK(gl2_order(7, 1) == 2016);
    CHECK(coset_space_size(7, 1) == 48);
    CHECK(gl2_order(3, 2) == 3888);
    CHECK(coset_space_size(3, 2) == 72);
    CHECK(coset_space_size(5, 4) == 375000);
    CHECK(gl2_order_N(63) == 7838208);
    CHECK(coset_space_size_N(63) == 3456);
}

TEST_CASE("matrix text format") {
    Mat2 g(2, 42, 21, 20, 63);
    CHECK(parse_mat2(g.to_string()) == g);
    CHECK(parse_mat2("[[2,42],[21,20]]", 63) == g);
    CHECK(parse_mat2("[[-1, 1], [-1, -1]] mod 63") == Mat2(-1, 1, -1, -1, 63));
    CHECK_THROWS_AS(parse_mat2("[[1,2],[3,4]]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mat2("nonsense", 63), std::invalid_argument);
}
