#pragma once

#include <string>
#include <vector>

#include "gl2dc/conjugacy.hpp"
#include "gl2dc/padic.hpp"

namespace gl2dc {

// One term a x (b,c): a double cosets of relative size b, each a union of
// b/c inertia cosets of relative size c.  Unramified types have c = 1.
struct DCTerm {
    Int count;
    uint64_t b = 1;
    uint64_t c = 1;
};

struct DCType {
    std::vector<DCTerm> terms;  // canonical: sorted by (b,c), merged, no zeros

    void add_term(const Int& count, uint64_t b, uint64_t c = 1);
    void canonicalize();

    Int mass() const;  // sum count * b
    bool unramified() const;
    bool operator==(const DCType& o) const;

    // "750 x 500" / "6 x (6,1) + 12 x (6,3)"
    std::string to_string() const;
    std::string json() const;
};

DCType parse_dctype(const std::string& text);

// Per-term factorization data: count primes with ramification e = c and
// residual degree f = b/c.
struct FactorShape {
    Int count;
    uint64_t e = 1;
    uint64_t f = 1;
};
std::vector<FactorShape> to_factorization(const DCType& d);

// Standard types: the double coset type whose k-th kernel profile is
//   l0(k) = sum_i [k_i | k] * min(v(k)+e_i, n)
// computed by Moebius inversion.  These realize the one- and two-parameter
// standard families DCT(k0;a[,b]) and DCT(k1,k2;a[,b]).
DCType std_dct(const Int& p, int n, uint64_t k0, int a);
DCType std_dct(const Int& p, int n, uint64_t k0, int a, int b);
DCType std_dct2(const Int& p, int n, uint64_t k1, uint64_t k2, int a);
DCType std_dct2(const Int& p, int n, uint64_t k1, uint64_t k2, int a, int b);

// Product of types for a direct product of groups, extended bilinearly from
//   (a x (b,c)) ⊗ (a' x (b',c')) = a b a' b'/lcm(b,b') x (lcm(b,b'), lcm(c,c')).
DCType tensor(const DCType& d1, const DCType& d2);
DCType tensor_identity();  // 1 x (1,1)

// The distinguished maximal-valuation root z^mu(alpha) = (w(alpha)-alpha)^2 / p^mu
// where w is the Teichmuller lift; v(z) = 2 v_alpha - mu.
TruncatedPadic z_mu(const PValued& alpha, int mu, int working_precision);

struct UValues {
    long u1 = -1, u2 = -1, u3 = -1, u4 = -1;  // -1 = not applicable
};

// The auxiliary valuations (capped at n) a label's type dispatch needs.
UValues u_values(const ClassLabel& label);

// Unramified double coset type of a conjugacy class / of a matrix over a
// prime power / over an odd composite modulus (tensor over CRT factors).
DCType unramified_dct(const ClassLabel& label);
DCType unramified_dct(const Mat2& g, const Int& p, int n);
DCType unramified_dct_N(const Mat2& g);

// Ramified pair types for the multiplicative and good-ordinary local shapes.
DCType mult_dct(const Int& p, int n, const Int& alpha, int eps, int b1, int b2);
DCType ord_dct(const Int& p, int n, const Int& alpha);

}  // namespace gl2dc
