#include "gl2dc/padic.hpp"

#include <sstream>

namespace gl2dc {

PValued::PValued(Int v, Int prime, int exponent) : p(std::move(prime)), n(exponent) {
    if (n < 1) throw std::invalid_argument("PValued: exponent must be >= 1");
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("PValued: p must be an odd prime");
    value = mod_reduce(v, pow_int(p, n));
}

long val(const Int& x, const Int& p, long cap) { return val_cap(x, p, cap); }

Int residue_order(const PValued& alpha) {
    if (!alpha.is_unit()) throw std::invalid_argument("residue_order: non-unit");
    return element_order(mod_reduce(alpha.value, alpha.p), alpha.p, alpha.p - 1);
}

Int unit_order(const PValued& alpha) {
    if (!alpha.is_unit()) throw std::invalid_argument("unit_order: non-unit");
    return unit_order_mod_prime_power(alpha.value, alpha.p, alpha.n);
}

long v_alpha(const PValued& alpha) {
    Int ob = residue_order(alpha);
    Int t = pow_mod(alpha.value, ob, alpha.modulus()) - 1;
    return val_cap(t, alpha.p, alpha.n);
}

namespace {

// Tonelli-Shanks mod an odd prime; a must be a QR.
Int sqrt_mod_prime(const Int& a0, const Int& p) {
    Int a = mod_reduce(a0, p);
    if (a == 0) return 0;
    if (mod_reduce(p, 4) == 3) return pow_mod(a, (p + 1) / 4, p);
    // write p-1 = q * 2^s
    Int q = p - 1;
    long s = 0;
    while (mod_reduce(q, 2) == 0) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (legendre(z, p) != -1) ++z;
    Int m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) {
            tt = mod_reduce(tt * tt, p);
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = mod_reduce(b * b, p);
        m = i;
        c = mod_reduce(b * b, p);
        t = mod_reduce(t * c, p);
        r = mod_reduce(r * b, p);
    }
    return r;
}

}  // namespace

std::optional<PValued> sqrt_mod(const PValued& x) {
    const Int& p = x.p;
    int n = x.n;
    Int m = x.modulus();
    if (x.value == 0) {
        // p^(2*ceil(n/2)) ≡ 0 mod p^n
        return PValued(pow_int(p, (n + 1) / 2), p, n);
    }
    long v = val_cap(x.value, p, n);
    if (v % 2 != 0) return std::nullopt;
    Int u = x.value / pow_int(p, v);
    int nu = n - static_cast<int>(v);  // precision available for the unit part
    if (legendre(u, p) != 1) return std::nullopt;
    Int r = sqrt_mod_prime(u, p);
    // Hensel: r <- r - (r^2-u)/(2r), doubling precision each step
    Int mod_cur = p;
    int prec = 1;
    while (prec < nu) {
        prec = std::min(2 * prec, nu);
        mod_cur = pow_int(p, prec);
        Int denom = inv_mod(mod_reduce(2 * r, mod_cur), mod_cur);
        r = mod_reduce(r - (r * r - u) * denom, mod_cur);
    }
    Int root = mod_reduce(pow_int(p, v / 2) * r, m);
    if (mod_reduce(root * root - x.value, m) != 0)
        throw std::logic_error("sqrt_mod: lift failed");
    return PValued(root, p, n);
}

PValued teichmuller(const PValued& alpha) {
    if (!alpha.is_unit()) throw std::invalid_argument("teichmuller: non-unit");
    Int m = alpha.modulus();
    Int w = alpha.value;
    // x -> x^p contracts toward the Teichmuller fixed point; n iterations
    // pin it mod p^n.
    for (int i = 0; i < alpha.n; ++i) w = pow_mod(w, alpha.p, m);
    if (pow_mod(w, alpha.p, m) != w) throw std::logic_error("teichmuller: no fixed point");
    return PValued(w, alpha.p, alpha.n);
}

Int poly_eval(const std::vector<Int>& f, const Int& x, const Int& mod) {
    Int acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod_reduce(acc * x + *it, mod);
    return acc;
}

TruncatedPadic hensel_root(const std::vector<Int>& f, const Int& x0, const Int& p,
                           int target_precision) {
    if (target_precision < 1) throw std::invalid_argument("hensel_root: precision < 1");
    std::vector<Int> df;
    for (size_t i = 1; i < f.size(); ++i) df.push_back(Int(static_cast<long>(i)) * f[i]);
    if (mod_reduce(poly_eval(f, x0, p), p) != 0)
        throw std::invalid_argument("hensel_root: x0 is not a root mod p");
    if (mod_reduce(poly_eval(df, x0, p), p) == 0)
        throw std::invalid_argument("hensel_root: derivative is not a unit at x0");
    Int x = mod_reduce(x0, p);
    int prec = 1;
    while (prec < target_precision) {
        prec = std::min(2 * prec, target_precision);
        Int m = pow_int(p, prec);
        Int fx = poly_eval(f, x, m);
        Int dfx = poly_eval(df, x, m);
        x = mod_reduce(x - fx * inv_mod(dfx, m), m);
    }
    Int m = pow_int(p, target_precision);
    if (poly_eval(f, x, m) != 0) throw std::logic_error("hensel_root: convergence failed");
    return TruncatedPadic::from_residue(PValued(x, p, target_precision));
}

// ---- TruncatedPadic ----

TruncatedPadic TruncatedPadic::zero(const Int& p, long abs_precision) {
    TruncatedPadic z;
    z.p = p;
    z.unit = 0;
    z.valuation = abs_precision;
    z.precision = 0;
    z.exact_zero = true;
    return z;
}

TruncatedPadic TruncatedPadic::from_integer(const Int& x, const Int& p, int abs_precision) {
    if (abs_precision < 1) throw std::invalid_argument("from_integer: precision < 1");
    Int m = pow_int(p, abs_precision);
    Int r = mod_reduce(x, m);
    if (r == 0) return zero(p, abs_precision);
    long v = val_cap(r, p, abs_precision);
    TruncatedPadic t;
    t.p = p;
    t.valuation = v;
    t.precision = abs_precision - static_cast<int>(v);
    t.unit = mod_reduce(r / pow_int(p, v), pow_int(p, t.precision));
    return t;
}

TruncatedPadic TruncatedPadic::from_residue(const PValued& x) {
    return from_integer(x.value, x.p, x.n);
}

Int TruncatedPadic::residue(int k) const {
    if (k > abs_precision()) throw precision_error("residue: beyond known precision");
    Int m = pow_int(p, k);
    if (exact_zero || valuation >= k) return 0;
    if (valuation < 0) throw std::invalid_argument("residue: negative valuation");
    return mod_reduce(unit * pow_int(p, valuation), m);
}

long TruncatedPadic::val(long cap) const {
    if (exact_zero) {
        if (cap > abs_precision())
            throw precision_error("val: zero not resolved to requested cap");
        return cap;
    }
    return std::min(valuation, cap);
}

std::string TruncatedPadic::to_string() const {
    std::ostringstream os;
    if (exact_zero) {
        os << "O(" << p << "^" << abs_precision() << ")";
        return os.str();
    }
    os << unit << "*" << p << "^" << valuation << " + O(" << p << "^" << abs_precision() << ")";
    return os.str();
}

namespace {

void require_same_p(const TruncatedPadic& a, const TruncatedPadic& b) {
    if (a.p != b.p) throw std::invalid_argument("TruncatedPadic: prime mismatch");
}

}  // namespace

TruncatedPadic operator+(const TruncatedPadic& a, const TruncatedPadic& b) {
    require_same_p(a, b);
    long abs_prec = std::min(a.abs_precision(), b.abs_precision());
    if (a.exact_zero && b.exact_zero) return TruncatedPadic::zero(a.p, abs_prec);
    if (a.exact_zero || b.exact_zero) {
        const TruncatedPadic& x = a.exact_zero ? b : a;
        if (x.valuation >= abs_prec) return TruncatedPadic::zero(a.p, abs_prec);
        TruncatedPadic t = x;
        t.precision = static_cast<int>(abs_prec - x.valuation);
        t.unit = mod_reduce(x.unit, pow_int(a.p, t.precision));
        return t;
    }
    long v0 = std::min(a.valuation, b.valuation);
    long digits = abs_prec - v0;
    if (digits < 1) throw precision_error("TruncatedPadic add: no overlapping digits");
    Int m = pow_int(a.p, digits);
    Int s = mod_reduce(a.unit * pow_int(a.p, a.valuation - v0) + b.unit * pow_int(a.p, b.valuation - v0), m);
    if (s == 0) return TruncatedPadic::zero(a.p, abs_prec);
    long v = val_cap(s, a.p, digits);
    TruncatedPadic t;
    t.p = a.p;
    t.valuation = v0 + v;
    t.precision = static_cast<int>(digits - v);
    t.unit = mod_reduce(s / pow_int(a.p, v), pow_int(a.p, t.precision));
    return t;
}

TruncatedPadic operator-(const TruncatedPadic& a, const TruncatedPadic& b) {
    TruncatedPadic nb = b;
    if (!nb.exact_zero) nb.unit = mod_reduce(-nb.unit, pow_int(nb.p, nb.precision));
    return a + nb;
}

TruncatedPadic operator*(const TruncatedPadic& a, const TruncatedPadic& b) {
    require_same_p(a, b);
    if (a.exact_zero || b.exact_zero) {
        // zero to abs precision A times a value of valuation v: zero mod p^(A+v)
        return TruncatedPadic::zero(a.p, a.valuation + b.valuation);
    }
    int prec = std::min(a.precision, b.precision);
    if (prec < 1) throw precision_error("TruncatedPadic mul: precision exhausted");
    TruncatedPadic t;
    t.p = a.p;
    t.valuation = a.valuation + b.valuation;
    t.precision = prec;
    t.unit = mod_reduce(a.unit * b.unit, pow_int(a.p, prec));
    return t;
}

TruncatedPadic operator/(const TruncatedPadic& a, const TruncatedPadic& b) {
    require_same_p(a, b);
    if (b.exact_zero) throw std::invalid_argument("TruncatedPadic div: division by zero");
    if (a.exact_zero) return TruncatedPadic::zero(a.p, a.valuation - b.valuation);
    int prec = std::min(a.precision, b.precision);
    if (prec < 1) throw precision_error("TruncatedPadic div: precision exhausted");
    Int m = pow_int(a.p, prec);
    TruncatedPadic t;
    t.p = a.p;
    t.valuation = a.valuation - b.valuation;
    t.precision = prec;
    t.unit = mod_reduce(a.unit * inv_mod(mod_reduce(b.unit, m), m), m);
    return t;
}

}  // namespace gl2dc
