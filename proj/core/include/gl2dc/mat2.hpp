#pragma once

#include <string>
#include <vector>

#include "gl2dc/integers.hpp"

namespace gl2dc {

// 2x2 matrix [[a,b],[c,d]] over Z/mod, entries reduced.
struct Mat2 {
    Int a, b, c, d;
    Int mod;

    Mat2() = default;
    Mat2(Int a_, Int b_, Int c_, Int d_, Int mod_);

    static Mat2 identity(const Int& mod);
    static Mat2 scalar(const Int& s, const Int& mod);

    Int det() const;
    Int trace() const;
    bool is_invertible() const;
    Mat2 inverse() const;

    bool operator==(const Mat2& o) const = default;

    std::string to_string() const;  // "[[a,b],[c,d]] mod m"
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 mat_pow(const Mat2& g, const Int& e);
Mat2 mat_sub(const Mat2& x, const Mat2& y);

// Parse "[[a,b],[c,d]]" or "[[a,b],[c,d]] mod m"; mod falls back to
// default_mod when the suffix is absent (0 = require suffix).
Mat2 parse_mat2(const std::string& text, const Int& default_mod = 0);

// Largest mu <= n with g scalar mod p^mu: min of the capped valuations of
// a-d, b, c.
long mu_depth(const Mat2& g, const Int& p, int n);

struct SmithForm {
    long e1 = 0, e2 = 0;  // diag(p^e1, p^e2), 0 <= e1 <= e2 <= n
    bool operator==(const SmithForm&) const = default;
};

// Smith form exponents of g over Z/p^n, capped at n.  e2 uses the extra
// precision available in det after the entries share a factor p^e1, with the
// convention e1+e2 = min(v(det), e1+n).
SmithForm smith(const Mat2& g, const Int& p, int n);

// Componentwise reduction modulo the prime-power factors of an odd modulus.
std::vector<Mat2> crt_split(const Mat2& g);
Mat2 crt_join(const std::vector<Mat2>& parts);

// Exact multiplicative order of an invertible g over Z/p^n (descends from
// the group order) or over odd composite modulus (lcm over CRT factors).
Int matrix_order(const Mat2& g, const Int& p, int n);
Int matrix_order(const Mat2& g);

// |GL_2(Z/p^n)| = (p-1)^2 (p+1) p^(4n-3)
Int gl2_order(const Int& p, int n);
// |W| = (p^2-1) p^(2n-2): primitive vectors mod p^n (equivalently G/Gamma)
Int coset_space_size(const Int& p, int n);
// Same quantities for odd composite N (products over prime powers).
Int gl2_order_N(const Int& N);
Int coset_space_size_N(const Int& N);

}  // namespace gl2dc
