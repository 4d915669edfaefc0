#pragma once

#include <optional>
#include <vector>

#include "gl2dc/integers.hpp"

namespace gl2dc {

// Residue in Z/p^n for an odd prime p.
struct PValued {
    Int value;  // 0 <= value < p^n
    Int p;
    int n = 1;

    PValued() = default;
    PValued(Int v, Int prime, int exponent);

    Int modulus() const { return pow_int(p, n); }
    bool is_unit() const { return mod_reduce(value, p) != 0; }
    // min(v_p(value), n)
    long val() const { return val_cap(value, p, n); }
};

// Truncated element of Q_p: p^valuation * unit, with the unit known modulo
// p^precision.  exact_zero marks 0 known to absolute precision
// valuation + precision.
struct TruncatedPadic {
    Int unit;       // reduced mod p^precision; a unit unless exact_zero
    long valuation = 0;
    int precision = 1;  // relative precision (digits of the unit part)
    Int p;
    bool exact_zero = false;

    static TruncatedPadic zero(const Int& p, long abs_precision);
    static TruncatedPadic from_integer(const Int& x, const Int& p, int abs_precision);
    static TruncatedPadic from_residue(const PValued& x);  // abs precision n

    long abs_precision() const { return valuation + precision; }
    bool is_zero() const { return exact_zero; }

    // Residue of the value mod p^k; requires k <= abs_precision and
    // valuation >= 0.
    Int residue(int k) const;

    // min(v(x), cap) -- cap must be <= abs_precision for a zero value.
    long val(long cap) const;

    std::string to_string() const;
};

TruncatedPadic operator+(const TruncatedPadic& a, const TruncatedPadic& b);
TruncatedPadic operator-(const TruncatedPadic& a, const TruncatedPadic& b);
TruncatedPadic operator*(const TruncatedPadic& a, const TruncatedPadic& b);
TruncatedPadic operator/(const TruncatedPadic& a, const TruncatedPadic& b);

// min(v_p(x), cap); val(0, ...) = cap.  (Truncation convention for residues.)
long val(const Int& x, const Int& p, long cap);

// Multiplicative order of a unit alpha in (Z/p^n)^x.
Int unit_order(const PValued& alpha);

// Order of the reduction of alpha in F_p^x.
Int residue_order(const PValued& alpha);

// v_alpha = min(v(alpha^{o_alphabar} - 1), n)  (always >= 1)
long v_alpha(const PValued& alpha);

// Square root in Z/p^n when one exists.  Unit squares are lifted by
// Tonelli-Shanks + Hensel; non-units split off an even power of p first.
std::optional<PValued> sqrt_mod(const PValued& x);

// Teichmuller representative: the (p-1)-st root of unity congruent to alpha
// mod p, computed in Z/p^n.
PValued teichmuller(const PValued& alpha);

// Newton lift of a simple root: f(x0) ≡ 0 mod p and f'(x0) a unit.
// f is given by its integer coefficients, constant term first.
TruncatedPadic hensel_root(const std::vector<Int>& f, const Int& x0, const Int& p,
                           int target_precision);

Int poly_eval(const std::vector<Int>& f, const Int& x, const Int& mod);

}  // namespace gl2dc
