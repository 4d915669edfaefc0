#include "gl2dc/mat2.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace gl2dc {

Mat2::Mat2(Int a_, Int b_, Int c_, Int d_, Int mod_) : mod(std::move(mod_)) {
    if (mod < 2) throw std::invalid_argument("Mat2: modulus must be >= 2");
    a = mod_reduce(a_, mod);
    b = mod_reduce(b_, mod);
    c = mod_reduce(c_, mod);
    d = mod_reduce(d_, mod);
}

Mat2 Mat2::identity(const Int& mod) { return Mat2(1, 0, 0, 1, mod); }
Mat2 Mat2::scalar(const Int& s, const Int& mod) { return Mat2(s, 0, 0, s, mod); }

Int Mat2::det() const { return mod_reduce(a * d - b * c, mod); }
Int Mat2::trace() const { return mod_reduce(a + d, mod); }

bool Mat2::is_invertible() const { return gcd(det(), mod) == 1; }

Mat2 Mat2::inverse() const {
    Int di = inv_mod(det(), mod);
    return Mat2(d * di, -b * di, -c * di, a * di, mod);
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    if (x.mod != y.mod) throw std::invalid_argument("Mat2: modulus mismatch");
    return Mat2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d, x.mod);
}

Mat2 mat_sub(const Mat2& x, const Mat2& y) {
    if (x.mod != y.mod) throw std::invalid_argument("Mat2: modulus mismatch");
    return Mat2(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d, x.mod);
}

Mat2 mat_pow(const Mat2& g, const Int& e) {
    if (e < 0) return mat_pow(g.inverse(), -e);
    Mat2 r = Mat2::identity(g.mod);
    Mat2 base = g;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

std::string Mat2::to_string() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]] mod " << mod;
    return os.str();
}

Mat2 parse_mat2(const std::string& text, const Int& default_mod) {
    // Accepts [[a,b],[c,d]] with optional "mod m" suffix; whitespace tolerant.
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto fail = [&] { throw std::invalid_argument("parse_mat2: expected [[a,b],[c,d]] mod m, got: " + text); };
    size_t i = 0;
    auto expect = [&](const char* lit) {
        size_t len = strlen(lit);
        if (s.compare(i, len, lit) != 0) fail();
        i += len;
    };
    auto number = [&]() -> Int {
        size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        size_t k = j;
        while (k < s.size() && isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j) fail();
        Int v(s.substr(i, k - i));
        i = k;
        return v;
    };
    expect("[[");
    Int a = number();
    expect(",");
    Int b = number();
    expect("],[");
    Int c = number();
    expect(",");
    Int d = number();
    expect("]]");
    Int m = default_mod;
    if (i < s.size()) {
        expect("mod");
        m = number();
        if (i != s.size()) fail();
    }
    if (m == 0) throw std::invalid_argument("parse_mat2: modulus required");
    return Mat2(a, b, c, d, m);
}

long mu_depth(const Mat2& g, const Int& p, int n) {
    long v1 = val_cap(mod_reduce(g.a - g.d, g.mod), p, n);
    long v2 = val_cap(g.b, p, n);
    long v3 = val_cap(g.c, p, n);
    return std::min({v1, v2, v3});
}

SmithForm smith(const Mat2& g, const Int& p, int n) {
    long e1 = std::min({val_cap(g.a, p, n), val_cap(g.b, p, n), val_cap(g.c, p, n),
                        val_cap(g.d, p, n)});
    // det of the integer lifts is well defined mod p^(n+e1)
    Int det_lift = g.a * g.d - g.b * g.c;
    long vdet = val_cap(det_lift, p, n + e1);
    long e2 = std::min<long>(vdet - e1, n);
    SmithForm s{e1, e2};
    if (s.e2 < s.e1) throw std::logic_error("smith: e2 < e1");
    return s;
}

std::vector<Mat2> crt_split(const Mat2& g) {
    if (mod_reduce(g.mod, 2) == 0) throw std::invalid_argument("crt_split: modulus must be odd");
    std::vector<Mat2> parts;
    for (auto& [p, e] : factor(g.mod)) {
        Int m = pow_int(p, e);
        parts.emplace_back(g.a, g.b, g.c, g.d, m);
    }
    return parts;
}

Mat2 crt_join(const std::vector<Mat2>& parts) {
    if (parts.empty()) throw std::invalid_argument("crt_join: empty input");
    Mat2 acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) {
        const Mat2& g = parts[i];
        Int m = acc.mod * g.mod;
        acc = Mat2(crt2(acc.a, acc.mod, g.a, g.mod), crt2(acc.b, acc.mod, g.b, g.mod),
                   crt2(acc.c, acc.mod, g.c, g.mod), crt2(acc.d, acc.mod, g.d, g.mod), m);
    }
    return acc;
}

Int gl2_order(const Int& p, int n) {
    return (p - 1) * (p - 1) * (p + 1) * pow_int(p, 4 * n - 3);
}

Int coset_space_size(const Int& p, int n) {
    return (p * p - 1) * pow_int(p, 2 * n - 2);
}

Int gl2_order_N(const Int& N) {
    Int r = 1;
    for (auto& [p, e] : factor(N)) r *= gl2_order(p, e);
    return r;
}

Int coset_space_size_N(const Int& N) {
    Int r = 1;
    for (auto& [p, e] : factor(N)) r *= coset_space_size(p, e);
    return r;
}

Int matrix_order(const Mat2& g, const Int& p, int n) {
    if (!g.is_invertible()) throw std::invalid_argument("matrix_order: non-invertible matrix");
    Int o = gl2_order(p, n);
    if (!(mat_pow(g, o) == Mat2::identity(g.mod)))
        throw std::logic_error("matrix_order: group order is not annihilating");
    for (auto& [q, e] : factor(o)) {
        for (int i = 0; i < e; ++i) {
            if (o % q != 0) break;
            Int o2 = o / q;
            if (mat_pow(g, o2) == Mat2::identity(g.mod))
                o = o2;
            else
                break;
        }
    }
    return o;
}

Int matrix_order(const Mat2& g) {
    Int o = 1;
    for (auto& part : crt_split(g)) {
        auto f = factor(part.mod);
        Int po = matrix_order(part, f[0].first, f[0].second);
        o = o / gcd(o, po) * po;
    }
    return o;
}

}  // namespace gl2dc
