#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gl2dc/dct.hpp"

namespace gl2dc {
namespace oracle {

// Brute-force ground truth on small moduli: orbit enumeration on the set W
// of primitive vectors, arithmetic-function profiles from Smith forms, the
// r/s/t determinant polynomials, and exhaustive conjugacy partitioning.

struct Limits {
    uint64_t max_w = 1'000'000;        // |W| guard
    uint64_t max_steps = 100'000'000;  // group-action step guard
};

struct PrimVec {
    uint32_t x, y;
};

// All primitive vectors mod m (at least one coordinate a unit).
std::vector<PrimVec> enumerate_W(uint64_t m, const Limits& lim = {});

// Matrix with uint64 entries for fast group actions.
struct Mat2u {
    uint64_t a, b, c, d;
};
Mat2u to_mat2u(const Mat2& g);

// Double coset type of the pair (D, I) where D = <d_gens>, I = <i_gens>,
// computed by decomposing W into D-orbits and recording the I-orbit size of
// their members (which must be constant within every D-orbit).
DCType orbit_type(const std::vector<Mat2u>& d_gens, const std::vector<Mat2u>& i_gens, uint64_t m,
                  const Limits& lim = {});

// Convenience: type of a cyclic group with trivial inertia.
DCType orbit_type_cyclic(const Mat2& g, const Limits& lim = {});

// Generators of the D and I of the multiplicative local shape.
std::vector<Mat2u> mult_d_gens(const Int& p, int n, const Int& alpha, int eps, int b1);
std::vector<Mat2u> mult_i_gens(const Int& p, int n, int b2);
// Generators of the D and I of the good-ordinary local shape.
std::vector<Mat2u> ord_d_gens(const Int& p, int n, const Int& alpha);
std::vector<Mat2u> ord_i_gens(const Int& p, int n);

// k -> lambda_k(g): elements of W in <g>-orbits of exact size k, computed
// from Smith forms of g^k - 1 by Moebius inversion AND by direct orbit
// counting; throws on disagreement.
std::map<uint64_t, Int> lambda_profile(const Mat2& g, const Int& p, int n, const Limits& lim = {});

// r_k^mu, s_k^mu, t_k^mu as exact integer polynomials in x (alpha is used
// via the given integer lift).
std::vector<Int> r_poly(const Int& alpha, int mu, int k, const Int& p);
std::vector<Int> s_poly(const Int& alpha, int mu, int k, const Int& p);
std::vector<Int> t_poly(const Int& alpha, int mu, int k, const Int& p);

// min(v_p(t_k^mu(alpha,beta)), cap)
long t_eval_valuation(const Int& alpha, int mu, int k, const Int& beta, const Int& p, long cap);

// Maximal-valuation root of t_{o_ab}^mu(alpha, x) over Z/p^prec, found by
// exhaustive evaluation; independent check of the closed form for z^mu.
Int z_mu_definitional(const PValued& alpha, int mu, int prec);

// Conjugacy classes of GL_2(Z/p^n) by closure under conjugation by group
// generators; returns one representative per class plus class sizes.
struct BrutePartition {
    std::vector<Mat2> reps;
    std::vector<Int> sizes;
};
BrutePartition brute_conjugacy_partition(const Int& p, int n, const Limits& lim = {});

}  // namespace oracle
}  // namespace gl2dc
