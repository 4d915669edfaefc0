#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gl2dc/conjugacy.hpp"
#include "gl2dc/padic.hpp"

namespace gl2dc {

// Elliptic curve over Q in Weierstrass form with cached invariants.
struct CurveQ {
    Int a1, a2, a3, a4, a6;
    Int b2, b4, b6, b8, c4, c6, disc;

    static CurveQ from_ainvs(const Int& a1, const Int& a2, const Int& a3, const Int& a4,
                             const Int& a6);
    // "X0(11)" / "X0+(37)" aliases or "[a1,a2,a3,a4,a6]"
    static CurveQ parse(const std::string& text);

    // Global minimal model (Laska-Kraus-Connell).
    CurveQ minimal_model() const;

    // j = c4^3 / disc as a reduced fraction (num, den), den > 0.
    std::pair<Int, Int> j_invariant() const;

    std::string label() const;  // "[a1,a2,a3,a4,a6]"
};

enum class ReductionType { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
const char* reduction_type_name(ReductionType t);

// Reduction type at q of the (already minimal) model.
ReductionType reduction_type(const CurveQ& E, const Int& q);

// True when the conductor is squarefree (no additive primes).
bool is_semistable(const CurveQ& E);

struct EllipticOptions {
    uint64_t max_q = 1'000'000;  // naive point counting bound
    int sample_budget = 200;     // torsion basis search budget (points)
    uint64_t seed = 0x676c326463ull;
};

// (#E(F_q), a_q) by a quadratic-character sum; requires good reduction.
std::pair<Int, Int> count_points(const CurveQ& E, const Int& q, const EllipticOptions& opt = {});

// #E(F_{q^d}) from a_q via the Frobenius power-sum recurrence.
Int count_points_ext(const Int& a_q, const Int& q, int d);

// Largest j <= cap such that Frobenius acts as a scalar on E[ell^j]
// (= min(v_ell(b_q), cap)), decided by torsion scalar-action tests over the
// extension fields F_{q^d}.  ell may be 2 (used by delta_q).
int frobenius_mu(const CurveQ& E, const Int& q, const Int& ell, int cap,
                 const EllipticOptions& opt = {});

// Conjugacy class of Frobenius at q modulo p^n / modulo odd N (CRT factors).
ClassLabel frobenius_class(const CurveQ& E, const Int& q, const Int& p, int n,
                           const EllipticOptions& opt = {});
std::vector<ClassLabel> frobenius_class_N(const CurveQ& E, const Int& q, const Int& N,
                                          const EllipticOptions& opt = {});

struct DeltaData {
    Int a_q;
    Int delta_q;  // disc End(E_{F_q}) ∩ Q(pi)
    Int b_q;      // sqrt((a_q^2-4q)/delta_q)
    int delta01;  // 0 if delta_q ≡ 0 (4), 1 if ≡ 1 (4)
};
DeltaData delta_q(const CurveQ& E, const Int& q, const EllipticOptions& opt = {});

// The explicit integral Frobenius matrix assembled from (a_q, b_q, Delta_q,
// delta_q), reduced mod N.
Mat2 duke_toth_matrix(const CurveQ& E, const Int& q, const Int& N,
                      const EllipticOptions& opt = {});

struct TatePeriod {
    Int q;
    long m = 0;          // v_q(theta) = -v_q(j)
    TruncatedPadic theta;  // unit digits to the requested precision
};

// Multiplicative Tate period from the integral j-series, by fixed-point
// inversion to the requested absolute q-adic precision.
TatePeriod tate_period(const CurveQ& E, const Int& q, int precision);

struct MultParams {
    int eps;  // +1 split, -1 nonsplit
    int b1;
    int b2;
};
MultParams mult_params(const CurveQ& E, const Int& q, const Int& p, int n);

// Unit root of x^2 - a_p x + p mod p^n (good ordinary p).
PValued unit_root(const CurveQ& E, const Int& p, int n, const EllipticOptions& opt = {});

// Independent ground truth: explicit basis of E[ell^j] over the minimal
// extension and the matrix of (x,y) -> (x^q, y^q) in that basis.
Mat2 frobenius_matrix_oracle(const CurveQ& E, const Int& q, const Int& ell, int j,
                             const EllipticOptions& opt = {});

// ---- Frobenius data cache (line-delimited JSON records) ----

struct FrobeniusData {
    Int q;
    Int a_q;
    std::map<unsigned long, int> mu;  // ell -> v_ell(b_q) (exact)
    std::optional<Int> delta_q, b_q;
    std::optional<int> delta01;
};

class FrobeniusCache {
  public:
    FrobeniusCache() = default;
    // Binds the cache to a file; existing records for this curve are loaded.
    FrobeniusCache(std::string path, std::string curve_key);

    std::optional<FrobeniusData> lookup(const Int& q) const;
    void store(const FrobeniusData& d);  // upserts and appends to the file

    const std::string& curve_key() const { return curve_key_; }

  private:
    std::string path_, curve_key_;
    std::map<Int, FrobeniusData> records_;
    mutable std::mutex mtx_;
};

}  // namespace gl2dc
