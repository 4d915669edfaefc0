#include <doctest.h>

#include "gl2dc/padic.hpp"

using namespace gl2dc;

namespace {

// independent valuation oracle: repeated trial division
long val_oracle(Int x, const Int& p, long cap) {
    x = abs(x);
    if (x == 0) return cap;
    long v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace

TEST_CASE("capped valuation") {
    CHECK(val(15, 3, 2) == 1);
    CHECK(val(0, 5, 4) == 4);
    CHECK(val(-1188, 3, 2) == 2);  // 1188 = 4*27*11, capped at 2
    for (long x = -2000; x <= 2000; x += 7)
        for (Int p : {Int(3), Int(5)}) CHECK(val(x, p, 3) == val_oracle(x, p, 3));
}

TEST_CASE("unit orders and v_alpha") {
    CHECK(unit_order(PValued(2, 5, 4)) == 500);
    CHECK(unit_order(PValued(32, 5, 4)) == 100);
    CHECK(unit_order(PValued(1, 7, 3)) == 1);
    CHECK(v_alpha(PValued(2, 5, 4)) == 1);
    CHECK(v_alpha(PValued(32, 5, 4)) == 2);
    CHECK(v_alpha(PValued(1, 3, 2)) == 2);

    // o_alpha = o_alphabar * p^max(n - v_alpha, 0), exhaustively
    for (auto [pp, nn] : {std::pair<int, int>{3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
        Int p(pp);
        int n = nn;
        Int m = pow_int(p, n);
        for (Int a = 1; a < m; ++a) {
            if (mod_reduce(a, p) == 0) continue;
            PValued al(a, p, n);
            Int o = unit_order(al);
            CHECK(pow_mod(a, o, m) == 1);
            for (auto& [q, e] : factor(o)) {
                (void)e;
                CHECK(pow_mod(a, o / q, m) != 1);
            }
            long va = v_alpha(al);
            Int expect = residue_order(al) * pow_int(p, std::max(long(n) - va, 0L));
            CHECK(o == expect);
        }
    }
}

TEST_CASE("square roots mod p^n") {
    auto r1 = sqrt_mod(PValued(4, 7, 1));
    REQUIRE(r1.has_value());
    CHECK((r1->value == 2 || r1->value == 5));
    CHECK(!sqrt_mod(PValued(3, 7, 1)).has_value());

    // oracle: square all residues mod 49
    auto r2 = sqrt_mod(PValued(2, 7, 2));
    REQUIRE(r2.has_value());
    bool found = false;
    for (int r = 0; r < 49; ++r)
        if ((r * r) % 49 == 2) found = found || (r2->value == r);
    CHECK(found);

    for (auto [pp, nn] : {std::pair<int, int>{3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
        Int p(pp);
        int n = nn;
        Int m = pow_int(p, n);
        Int square_units = 0;
        for (Int x = 0; x < m; ++x) {
            auto r = sqrt_mod(PValued(x, p, n));
            if (r) CHECK(mod_reduce(r->value * r->value, m) == x);
            if (r && mod_reduce(x, p) != 0) ++square_units;
        }
        CHECK(square_units == (p - 1) * pow_int(p, n - 1) / 2);
    }
}

TEST_CASE("Teichmuller lifts") {
    CHECK(teichmuller(PValued(1, 5, 4)).value == 1);
    PValued w = teichmuller(PValued(2, 5, 4));
    CHECK(pow_mod(w.value, 4, 625) == 1);
    CHECK(mod_reduce(w.value, 5) == 2);
    // oracle: the unique 4th root of unity congruent to 2 mod 5
    int hits = 0;
    for (int r = 0; r < 625; ++r)
        if (pow_mod(r, 4, 625) == 1 && r % 5 == 2) {
            ++hits;
            CHECK(w.value == r);
        }
    CHECK(hits == 1);
    PValued w7 = teichmuller(PValued(3, 7, 2));
    CHECK(pow_mod(w7.value, 6, 49) == 1);
    CHECK(mod_reduce(w7.value, 7) == 3);
    for (Int a = 1; a < 27; ++a) {
        if (a % 3 == 0) continue;
        CHECK(pow_mod(teichmuller(PValued(a, 3, 3)).value, 2, 27) == 1);
    }
}

TEST_CASE("Hensel lifting") {
    // x^2 - x - 1 has discriminant 5: the root 3 mod 5 is a double root and
    // the derivative is not a unit there, so lifting must be refused
    CHECK_THROWS_AS(hensel_root(std::vector<Int>{-1, -1, 1}, 3, 5, 4), std::invalid_argument);
    // over Z/11 the same polynomial has simple roots (disc 5 is a unit square)
    std::vector<Int> f = {-1, -1, 1};
    TruncatedPadic r = hensel_root(f, 8, 11, 4);
    CHECK(poly_eval(f, r.residue(4), pow_int(11, 4)) == 0);
    CHECK(mod_reduce(r.residue(4), 11) == 8);

    std::vector<Int> lin = {-17, 1};  // x - 17
    CHECK(hensel_root(lin, 17 % 3, 3, 4).residue(4) == 17);

    // unit root of x^2 - a_3 x + 3 for a_3 = -1: x^2 + x + 3 mod 9
    std::vector<Int> g = {3, 1, 1};
    TruncatedPadic root = hensel_root(g, 2, 3, 2);
    Int rv = root.residue(2);
    CHECK(mod_reduce(rv * rv + rv + 3, 9) == 0);
    CHECK(mod_reduce(rv, 3) == 2);

    CHECK_THROWS_AS(hensel_root(std::vector<Int>{0, 0, 1}, 0, 5, 3), std::invalid_argument);
}

TEST_CASE("truncated p-adic arithmetic") {
    Int p = 5;
    auto x = TruncatedPadic::from_integer(230, p, 4);  // 5 + 4*25 + 125
    CHECK(x.valuation == 1);
    CHECK(x.residue(4) == 230);
    auto y = TruncatedPadic::from_integer(20, p, 4);
    auto d = y - x;
    CHECK(d.val(4) == 1);  // v(20 - 230) = v(-210) = 1
    auto z = x * x;
    CHECK(z.valuation == 2);
    auto q = x / y;
    CHECK(q.valuation == 0);
    auto zero = x - x;
    CHECK(zero.is_zero());
    CHECK(zero.val(3) == 3);
    CHECK_THROWS_AS(zero.val(10), precision_error);
    auto t = TruncatedPadic::from_integer(0, p, 3);
    CHECK(t.is_zero());
}
