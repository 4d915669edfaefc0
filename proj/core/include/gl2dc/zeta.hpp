#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gl2dc/dct.hpp"
#include "gl2dc/elliptic.hpp"

namespace gl2dc {

struct ZetaOptions {
    EllipticOptions elliptic;
    int threads = 1;
    std::string cache_path;        // optional FrobeniusData cache file
    bool assume_maximal_image = false;
    std::function<void(const std::string&)> progress;  // stderr-style notes
};

// Factorization type of q in the degree-[G:Gamma] field attached to (E, N):
// unramified primes via the Frobenius class, q | N_E via the multiplicative
// pair types, q | N via the good-ordinary pair type.
DCType factorization_type(const CurveQ& E, const Int& N, const Int& q, const ZetaOptions& opt = {});

// [1, z_q, z_{q^2}, ..., z_{q^T}] from the type of q (binomial convolution
// of the per-degree geometric factors).
std::vector<Int> euler_factor(const DCType& d, int order);

struct ZetaTable {
    Int lower = 1, upper = 1;
    std::map<Int, Int> coeffs;  // only nonzero entries
};

// Ideal-norm counts z_n for A <= n <= B.
ZetaTable zeta_coefficients(const CurveQ& E, const Int& N, const Int& A, const Int& B,
                            const ZetaOptions& opt = {});

struct TypeDistribution {
    Int group_order;
    std::vector<std::pair<DCType, Int>> entries;  // type -> total class mass
};

// Chebotarev weights of every unramified factorization type mod N, combined
// across prime-power factors by tensoring per-factor aggregates.
TypeDistribution distribution(const Int& N);

// Minimal residual degree -> aggregated mass (density = mass/group order).
std::map<uint64_t, Int> min_degree_report(const Int& N);

// Fixed-point percentage of mass/group_order with `decimals` digits.
std::string density_percent(const Int& mass, const Int& group_order, int decimals);

struct PerPrimeReport {
    Int q;
    DCType type;
    uint64_t min_degree = 0;
    std::vector<Int> euler;  // z_{q^k} for k = 0..T
};
PerPrimeReport per_prime_report(const CurveQ& E, const Int& N, const Int& q, int order,
                                const ZetaOptions& opt = {});

// Checkable Theorem hypotheses: odd N, semistability, good ordinary
// reduction at every p | N.  Throws hypothesis_error on failure.
void check_hypotheses(const CurveQ& E, const Int& N, const ZetaOptions& opt = {});

}  // namespace gl2dc
