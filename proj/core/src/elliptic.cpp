#include "gl2dc/elliptic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace gl2dc {

namespace {

long val_exact(const Int& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("val_exact: zero");
    Int y = abs(x);
    long v = 0;
    while (mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t())) {
        y /= p;
        ++v;
    }
    return v;
}

}  // namespace

// ---- curve invariants and models ----

CurveQ CurveQ::from_ainvs(const Int& a1, const Int& a2, const Int& a3, const Int& a4,
                          const Int& a6) {
    CurveQ E;
    E.a1 = a1;
    E.a2 = a2;
    E.a3 = a3;
    E.a4 = a4;
    E.a6 = a6;
    E.b2 = a1 * a1 + 4 * a2;
    E.b4 = 2 * a4 + a1 * a3;
    E.b6 = a3 * a3 + 4 * a6;
    E.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    E.c4 = E.b2 * E.b2 - 24 * E.b4;
    E.c6 = -E.b2 * E.b2 * E.b2 + 36 * E.b2 * E.b4 - 216 * E.b6;
    E.disc = -E.b2 * E.b2 * E.b8 - 8 * E.b4 * E.b4 * E.b4 - 27 * E.b6 * E.b6 + 9 * E.b2 * E.b4 * E.b6;
    if (E.disc == 0) throw std::invalid_argument("CurveQ: singular curve (disc = 0)");
    if ((E.c4 * E.c4 * E.c4 - E.c6 * E.c6) != 1728 * E.disc)
        throw std::logic_error("CurveQ: invariant identity failed");
    return E;
}

CurveQ CurveQ::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s == "X0(11)" || s == "x0(11)") return from_ainvs(0, -1, 1, -10, -20);
    if (s == "X0+(37)" || s == "x0+(37)") return from_ainvs(0, 0, 1, -1, 0);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("CurveQ::parse: expected [a1,a2,a3,a4,a6] or a named curve");
    std::vector<Int> a;
    size_t i = 1;
    while (i < s.size() - 1) {
        size_t j = i;
        if (s[j] == '-' || s[j] == '+') ++j;
        while (j < s.size() - 1 && isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw std::invalid_argument("CurveQ::parse: bad coefficient");
        a.emplace_back(s.substr(i, j - i));
        i = j;
        if (i < s.size() - 1) {
            if (s[i] != ',') throw std::invalid_argument("CurveQ::parse: bad list");
            ++i;
        }
    }
    if (a.size() != 5) throw std::invalid_argument("CurveQ::parse: need 5 coefficients");
    return from_ainvs(a[0], a[1], a[2], a[3], a[4]);
}

std::string CurveQ::label() const {
    std::ostringstream os;
    os << "[" << a1 << "," << a2 << "," << a3 << "," << a4 << "," << a6 << "]";
    return os.str();
}

std::pair<Int, Int> CurveQ::j_invariant() const {
    Int num = c4 * c4 * c4, den = disc;
    Int g = gcd(num, den);
    if (g != 0) {
        num /= g;
        den /= g;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return {num, den};
}

namespace {

// Kraus integrality conditions for a (c4, c6) pair at 2 and 3.
bool kraus_ok(const Int& c4, const Int& c6) {
    if (val_cap(c6, 3, 3) == 2) return false;
    if (mod_reduce(c6, 4) == 3) return true;  // c6 ≡ -1 (mod 4)
    if (mod_reduce(c4, 16) == 0) {
        Int r32 = mod_reduce(c6, 32);
        if (r32 == 0 || r32 == 8) return true;
    }
    return false;
}

CurveQ curve_from_c4c6(const Int& c4, const Int& c6) {
    // b2 is determined mod 12 (x-translations shift it by 12); prefer the
    // reduced representative in [-5, 6] and verify.
    std::vector<long> window;
    for (long r = -5; r <= 6; ++r) window.push_back(r);
    for (long r = -23; r <= 24; ++r)
        if (r < -5 || r > 6) window.push_back(r);
    for (long r : window) {
        Int b2 = r;
        Int num4 = b2 * b2 - c4;
        if (mod_reduce(num4, 24) != 0) continue;
        Int b4 = num4 / 24;
        Int num6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
        if (mod_reduce(num6, 216) != 0) continue;
        Int b6 = num6 / 216;
        Int a1 = mod_reduce(b2, 2);
        if (mod_reduce(b2 - a1, 4) != 0) continue;
        Int a2 = (b2 - a1) / 4;
        Int a3 = mod_reduce(b6, 2);
        if (mod_reduce(b6 - a3, 4) != 0) continue;
        Int a6 = (b6 - a3) / 4;
        if (mod_reduce(b4 - a1 * a3, 2) != 0) continue;
        Int a4 = (b4 - a1 * a3) / 2;
        CurveQ E = CurveQ::from_ainvs(a1, a2, a3, a4, a6);
        if (E.c4 == c4 && E.c6 == c6) return E;
    }
    throw std::logic_error("curve_from_c4c6: no integral model found");
}

}  // namespace

CurveQ CurveQ::minimal_model() const {
    Int u4 = c4, u6 = c6, ud = disc;
    for (auto& [p, e] : factor(disc)) {
        (void)e;
        while (val_exact(ud, p) >= 12 && val_cap(u4, p, 4) >= 4 && val_cap(u6, p, 6) >= 6) {
            Int n4 = u4 / pow_int(p, 4), n6 = u6 / pow_int(p, 6);
            if ((p == 2 || p == 3) && !kraus_ok(n4, n6)) break;
            u4 = n4;
            u6 = n6;
            ud /= pow_int(p, 12);
        }
    }
    return curve_from_c4c6(u4, u6);
}

// ---- reduction data ----

const char* reduction_type_name(ReductionType t) {
    switch (t) {
        case ReductionType::Good: return "good";
        case ReductionType::SplitMultiplicative: return "split-mult";
        case ReductionType::NonsplitMultiplicative: return "nonsplit-mult";
        case ReductionType::Additive: return "additive";
    }
    return "?";
}

namespace {

// Number of nonsingular points (including infinity) of the reduction mod a
// tiny prime, by brute force on the full Weierstrass equation.
long smooth_point_count_small(const CurveQ& E, long q) {
    auto md = [&](const Int& v) { return mod_reduce(v, q).get_si(); };
    long a1 = md(E.a1), a2 = md(E.a2), a3 = md(E.a3), a4 = md(E.a4), a6 = md(E.a6);
    long count = 1;  // infinity
    for (long x = 0; x < q; ++x)
        for (long y = 0; y < q; ++y) {
            long f = (((y * y + a1 * x * y + a3 * y) - ((x + a2) * x + a4) * x - a6) % q + q) % q;
            if (f != 0) continue;
            long fx = ((a1 * y - (3 * x * x + 2 * a2 * x + a4)) % q + q) % q;
            long fy = ((2 * y + a1 * x + a3) % q + q) % q;
            if (fx != 0 || fy != 0) ++count;
        }
    return count;
}

}  // namespace

ReductionType reduction_type(const CurveQ& E, const Int& q) {
    if (mod_reduce(E.disc, q) != 0) return ReductionType::Good;
    if (mod_reduce(E.c4, q) == 0) return ReductionType::Additive;
    // multiplicative: split iff the node tangents are rational
    if (q >= 5)
        return legendre(mod_reduce(-E.c6, q), q) == 1 ? ReductionType::SplitMultiplicative
                                                      : ReductionType::NonsplitMultiplicative;
    // #E_ns(F_q) = q - a_q with a_q = +1 split, -1 nonsplit
    long smooth = smooth_point_count_small(E, q.get_si());
    long aq = q.get_si() - smooth;
    if (aq == 1) return ReductionType::SplitMultiplicative;
    if (aq == -1) return ReductionType::NonsplitMultiplicative;
    throw std::logic_error("reduction_type: inconsistent singular point count");
}

bool is_semistable(const CurveQ& E) {
    for (auto& [p, e] : factor(E.disc)) {
        (void)e;
        if (reduction_type(E, p) == ReductionType::Additive) return false;
    }
    return true;
}

// ---- point counting ----

std::pair<Int, Int> count_points(const CurveQ& E, const Int& q, const EllipticOptions& opt) {
    if (!is_prime(q)) throw std::invalid_argument("count_points: q must be prime");
    if (mod_reduce(E.disc, q) == 0)
        throw hypothesis_error("count_points: bad reduction at " + to_str(q));
    if (!q.fits_ulong_p() || q.get_ui() > opt.max_q)
        throw budget_error("count_points: q exceeds the counting bound");
    uint64_t qq = q.get_ui();
    if (qq < 5) {
        long n = smooth_point_count_small(E, static_cast<long>(qq));
        return {Int(n), Int(static_cast<long>(qq) + 1 - n)};
    }
    // y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4 over F_q
    uint64_t inv4 = powmod_u64(4 % qq, qq - 2, qq);
    uint64_t inv2 = powmod_u64(2 % qq, qq - 2, qq);
    uint64_t A2 = mulmod_u64(mod_reduce(E.b2, q).get_ui(), inv4, qq);
    uint64_t A4 = mulmod_u64(mod_reduce(E.b4, q).get_ui(), inv2, qq);
    uint64_t A6 = mulmod_u64(mod_reduce(E.b6, q).get_ui(), inv4, qq);
    std::vector<uint8_t> is_sq(qq, 0);
    for (uint64_t r = 0; r < qq; ++r) is_sq[mulmod_u64(r, r, qq)] = 1;
    long long total = 1;
    for (uint64_t x = 0; x < qq; ++x) {
        uint64_t f = (mulmod_u64((mulmod_u64((x + A2) % qq, x, qq) + A4) % qq, x, qq) + A6) % qq;
        if (f == 0)
            total += 1;
        else
            total += is_sq[f] ? 2 : 0;
    }
    Int count(static_cast<long>(total));
    Int a = q + 1 - count;
    if (a * a > 4 * q) throw std::logic_error("count_points: Hasse bound violated");
    return {count, a};
}

Int count_points_ext(const Int& a_q, const Int& q, int d) {
    if (d < 1) throw std::invalid_argument("count_points_ext: d must be >= 1");
    Int s_prev = 2, s_cur = a_q;
    for (int k = 2; k <= d; ++k) {
        Int s_next = a_q * s_cur - q * s_prev;
        s_prev = s_cur;
        s_cur = s_next;
    }
    return pow_int(q, d) + 1 - s_cur;
}

// ---- finite field F_{q^d} and curve arithmetic over it ----

namespace {

using El = std::vector<uint64_t>;

class Fq {
  public:
    uint64_t q;
    int d;
    std::vector<uint64_t> irred;  // low coefficients of the monic modulus

    Fq(uint64_t q_, int d_) : q(q_), d(d_) {
        if (q < 3 || q % 2 == 0) throw std::invalid_argument("Fq: q must be an odd prime");
        if (d < 1 || d > 256) throw budget_error("Fq: extension degree out of range");
        if (d == 1) {
            irred = {0};
            return;
        }
        for (uint64_t code = 0;; ++code) {
            std::vector<uint64_t> cand(d);
            uint64_t c = code;
            for (int i = 0; i < d; ++i) {
                cand[i] = c % q;
                c /= q;
            }
            if (c > 0) throw std::logic_error("Fq: no irreducible polynomial found");
            irred = cand;
            if (is_irreducible()) return;
        }
    }

    El zero() const { return El(d, 0); }
    El one() const {
        El e(d, 0);
        e[0] = 1;
        return e;
    }
    El from_u64(uint64_t v) const {
        El e(d, 0);
        e[0] = v % q;
        return e;
    }
    El gen() const {
        El e(d, 0);
        if (d == 1)
            e[0] = 1;
        else
            e[1] = 1;
        return e;
    }

    bool is_zero(const El& a) const {
        for (auto v : a)
            if (v) return false;
        return true;
    }

    El add(const El& a, const El& b) const {
        El r(d);
        for (int i = 0; i < d; ++i) {
            uint64_t s = a[i] + b[i];
            r[i] = s >= q ? s - q : s;
        }
        return r;
    }
    El sub(const El& a, const El& b) const {
        El r(d);
        for (int i = 0; i < d; ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + q - b[i];
        return r;
    }
    El neg(const El& a) const { return sub(zero(), a); }

    El mul(const El& a, const El& b) const {
        std::vector<unsigned __int128> acc(2 * d - 1, 0);
        for (int i = 0; i < d; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < d; ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
        }
        std::vector<uint64_t> t(2 * d - 1);
        for (size_t i = 0; i < acc.size(); ++i) t[i] = static_cast<uint64_t>(acc[i] % q);
        for (int i = 2 * d - 2; i >= d; --i) {
            uint64_t c = t[i];
            if (!c) continue;
            t[i] = 0;
            for (int j = 0; j < d; ++j) {
                if (!irred[j]) continue;
                uint64_t s = mulmod_u64(c, irred[j], q);
                uint64_t& slot = t[i - d + j];
                slot = slot >= s ? slot - s : slot + q - s;
            }
        }
        t.resize(d);
        return t;
    }

    El pow(El a, Int e) const {
        if (e < 0) {
            a = inv(a);
            e = -e;
        }
        El r = one();
        if (e == 0) return r;
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            r = mul(r, r);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
        }
        return r;
    }

    El inv(const El& a) const {
        if (is_zero(a)) throw std::invalid_argument("Fq: inverse of zero");
        return pow(a, order() - 2);
    }

    Int order() const { return pow_int(Int(static_cast<unsigned long>(q)), d); }

    El rand_el(std::mt19937_64& rng) const {
        El e(d);
        for (int i = 0; i < d; ++i) e[i] = rng() % q;
        return e;
    }

    // Tonelli-Shanks in F_{q^d}.
    std::optional<El> sqrt(const El& a, std::mt19937_64& rng) const {
        if (is_zero(a)) return zero();
        Int Q = order();
        Int h = (Q - 1) / 2;
        if (pow(a, h) != one()) return std::nullopt;
        if (mod_reduce(Q, 4) == 3) return pow(a, (Q + 1) / 4);
        Int s = Q - 1;
        long e = 0;
        while (mod_reduce(s, 2) == 0) {
            s /= 2;
            ++e;
        }
        El z = zero();
        for (int tries = 0; tries < 10000; ++tries) {
            El cand = tries < 64 ? from_u64(2 + static_cast<uint64_t>(tries)) : rand_el(rng);
            if (is_zero(cand)) continue;
            if (pow(cand, h) != one()) {
                z = cand;
                break;
            }
        }
        if (is_zero(z)) throw std::logic_error("Fq::sqrt: no non-residue found");
        long m = e;
        El c = pow(z, s);
        El t = pow(a, s);
        El r = pow(a, (s + 1) / 2);
        while (t != one()) {
            El tt = t;
            long i = 0;
            while (tt != one()) {
                tt = mul(tt, tt);
                ++i;
                if (i > m) throw std::logic_error("Fq::sqrt: order overflow");
            }
            El b = c;
            for (long j = 0; j < m - i - 1; ++j) b = mul(b, b);
            m = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
        return r;
    }

  private:
    bool is_irreducible() const {
        // walk x^(q^i) mod f; any gcd with f at i < d exposes a small factor
        El xq = powmod_x(Int(static_cast<unsigned long>(q)));
        El g = xq;
        for (int i = 1; i < d; ++i) {
            if (!coprime_with_modulus(sub(g, gen()))) return false;
            g = compose(g, xq);
        }
        return g == gen();
    }

    El powmod_x(const Int& e) const {
        El r = one(), base = gen();
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            r = mul(r, r);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, base);
        }
        return r;
    }

    El compose(const El& f, const El& g) const {
        El acc = zero();
        for (int i = d - 1; i >= 0; --i) {
            acc = mul(acc, g);
            acc[0] = (acc[0] + f[i]) % q;
        }
        return acc;
    }

    bool coprime_with_modulus(const El& a) const {
        if (is_zero(a)) return false;
        auto trim = [](std::vector<uint64_t>& v) {
            while (v.size() > 1 && v.back() == 0) v.pop_back();
        };
        auto is_zero_poly = [](const std::vector<uint64_t>& v) {
            return v.size() == 1 && v[0] == 0;
        };
        auto poly_mod = [&](std::vector<uint64_t> f, const std::vector<uint64_t>& g) {
            uint64_t lead_inv = powmod_u64(g.back(), q - 2, q);
            trim(f);
            while (f.size() >= g.size() && !is_zero_poly(f)) {
                uint64_t c = mulmod_u64(f.back(), lead_inv, q);
                size_t shift = f.size() - g.size();
                for (size_t i = 0; i < g.size(); ++i) {
                    uint64_t s = mulmod_u64(c, g[i], q);
                    uint64_t& slot = f[i + shift];
                    slot = slot >= s ? slot - s : slot + q - s;
                }
                f.pop_back();
                if (f.empty()) f.push_back(0);
                trim(f);
            }
            return f;
        };
        std::vector<uint64_t> f(irred);
        f.push_back(1);
        std::vector<uint64_t> g(a);
        trim(g);
        while (!is_zero_poly(g)) {
            auto r = poly_mod(f, g);
            f = g;
            g = r;
        }
        return f.size() == 1 && f[0] != 0;
    }
};

// Elliptic curve y^2 = x^3 + A2 x^2 + A4 x + A6 over F_{q^d}.
struct ECF {
    const Fq* F;
    El A2, A4, A6;

    struct Pt {
        El x, y;
        bool inf = true;
    };

    static ECF from_curve(const CurveQ& E, const Fq& F) {
        uint64_t q = F.q;
        uint64_t inv4 = powmod_u64(4 % q, q - 2, q);
        uint64_t inv2 = powmod_u64(2 % q, q - 2, q);
        ECF C;
        C.F = &F;
        C.A2 = F.from_u64(mulmod_u64(mod_reduce(E.b2, q).get_ui(), inv4, q));
        C.A4 = F.from_u64(mulmod_u64(mod_reduce(E.b4, q).get_ui(), inv2, q));
        C.A6 = F.from_u64(mulmod_u64(mod_reduce(E.b6, q).get_ui(), inv4, q));
        return C;
    }

    Pt infinity() const { return Pt{F->zero(), F->zero(), true}; }

    bool eq(const Pt& P, const Pt& Q) const {
        if (P.inf || Q.inf) return P.inf == Q.inf;
        return P.x == Q.x && P.y == Q.y;
    }

    El rhs(const El& x) const {
        El t = F->add(x, A2);
        t = F->mul(t, x);
        t = F->add(t, A4);
        t = F->mul(t, x);
        return F->add(t, A6);
    }

    Pt neg(const Pt& P) const {
        if (P.inf) return P;
        return Pt{P.x, F->neg(P.y), false};
    }

    Pt add(const Pt& P, const Pt& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        El lam;
        if (P.x == Q.x) {
            if (F->is_zero(F->add(P.y, Q.y))) return infinity();
            El num = F->mul(P.x, P.x);
            num = F->add(F->add(num, num), num);
            El t = F->mul(A2, P.x);
            num = F->add(num, F->add(t, t));
            num = F->add(num, A4);
            lam = F->mul(num, F->inv(F->add(P.y, P.y)));
        } else {
            lam = F->mul(F->sub(Q.y, P.y), F->inv(F->sub(Q.x, P.x)));
        }
        El x3 = F->mul(lam, lam);
        x3 = F->sub(x3, A2);
        x3 = F->sub(x3, P.x);
        x3 = F->sub(x3, Q.x);
        El y3 = F->sub(F->mul(lam, F->sub(P.x, x3)), P.y);
        return Pt{x3, y3, false};
    }

    Pt mul(const Pt& P, const Int& k) const {
        if (k < 0) return mul(neg(P), -k);
        Pt r = infinity(), base = P;
        if (k == 0) return r;
        size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            r = add(r, r);
            if (mpz_tstbit(k.get_mpz_t(), i)) r = add(r, base);
        }
        return r;
    }

    Pt random_point(std::mt19937_64& rng) const {
        for (int tries = 0; tries < 100000; ++tries) {
            El x = F->rand_el(rng);
            auto y = F->sqrt(rhs(x), rng);
            if (!y) continue;
            El yy = (rng() & 1) ? F->neg(*y) : *y;
            return Pt{x, yy, false};
        }
        throw budget_error("random_point: no point found");
    }

    // (x, y) -> (x^q, y^q)
    Pt frobenius(const Pt& P) const {
        if (P.inf) return P;
        Int q(static_cast<unsigned long>(F->q));
        return Pt{F->pow(P.x, q), F->pow(P.y, q), false};
    }
};

std::vector<uint64_t> pt_key(const ECF::Pt& P) {
    std::vector<uint64_t> k;
    k.push_back(P.inf ? 1 : 0);
    if (!P.inf) {
        k.insert(k.end(), P.x.begin(), P.x.end());
        k.insert(k.end(), P.y.begin(), P.y.end());
    }
    return k;
}

// ---- torsion machinery ----

enum class BasisOutcome { Found, NotContained, Exhausted };

struct BasisResult {
    BasisOutcome outcome;
    ECF::Pt P1, P2;
};

long ell_exponent(const ECF& C, ECF::Pt P, uint64_t ell, std::vector<ECF::Pt>* chain = nullptr) {
    long r = 0;
    Int l(static_cast<unsigned long>(ell));
    while (!P.inf) {
        if (chain) chain->push_back(P);
        P = C.mul(P, l);
        ++r;
        if (r > 200) throw std::logic_error("ell_exponent: runaway order");
    }
    return r;
}

// Lookup table of i*P1 + k*P2, 0 <= i,k < lj; empty when P1, P2 are dependent.
std::map<std::vector<uint64_t>, std::pair<long, long>> span_table(const ECF& C, const ECF::Pt& P1,
                                                                  const ECF::Pt& P2, uint64_t lj) {
    std::map<std::vector<uint64_t>, std::pair<long, long>> table;
    ECF::Pt row = C.infinity();
    for (uint64_t i = 0; i < lj; ++i) {
        ECF::Pt cur = row;
        for (uint64_t k = 0; k < lj; ++k) {
            auto [it, fresh] = table.insert({pt_key(cur), {static_cast<long>(i), static_cast<long>(k)}});
            (void)it;
            if (!fresh) return {};
            cur = C.add(cur, P2);
        }
        row = C.add(row, P1);
    }
    return table;
}

// Search for a basis of E[ell^j] inside a group of order M.
BasisResult find_basis(const ECF& C, const Int& M, uint64_t ell, int j, int budget,
                       std::mt19937_64& rng) {
    Int l(static_cast<unsigned long>(ell));
    long v = val_exact(M, l);
    if (v < 2 * j) return {BasisOutcome::NotContained, {}, {}};
    Int cof = M / pow_int(l, v);
    uint64_t lj = 1;
    for (int i = 0; i < j; ++i) lj *= ell;
    std::optional<ECF::Pt> first;
    for (int s = 0; s < budget; ++s) {
        ECF::Pt Q = C.mul(C.random_point(rng), cof);
        std::vector<ECF::Pt> chain;
        long r = ell_exponent(C, Q, ell, &chain);
        // a point of ell-order beyond ell^(v-j) rules out a full (l^j, l^j)
        if (r > v - j) return {BasisOutcome::NotContained, {}, {}};
        if (r < j) continue;
        ECF::Pt cand = chain[r - j];
        if (!first) {
            first = cand;
            continue;
        }
        if (!span_table(C, *first, cand, lj).empty()) return {BasisOutcome::Found, *first, cand};
    }
    return {BasisOutcome::Exhausted, {}, {}};
}

enum class ScalarOutcome { Scalar, NotScalar, NotContained, Exhausted };

ScalarOutcome scalar_action(const CurveQ& E, const Int& q, uint64_t ell, int j, uint64_t t, int d,
                            const Int& M, const EllipticOptions& opt) {
    Fq F(q.get_ui(), d);
    ECF C = ECF::from_curve(E, F);
    std::mt19937_64 rng(mix_seed(opt.seed, q.get_ui(), ell * 1000 + j, static_cast<uint64_t>(d)));
    BasisResult basis = find_basis(C, M, ell, j, opt.sample_budget, rng);
    if (basis.outcome == BasisOutcome::NotContained) return ScalarOutcome::NotContained;
    if (basis.outcome == BasisOutcome::Exhausted) return ScalarOutcome::Exhausted;
    Int tz(static_cast<unsigned long>(t));
    bool ok = C.eq(C.frobenius(basis.P1), C.mul(basis.P1, tz)) &&
              C.eq(C.frobenius(basis.P2), C.mul(basis.P2, tz));
    return ok ? ScalarOutcome::Scalar : ScalarOutcome::NotScalar;
}

std::vector<uint64_t> scalar_candidates(const Int& a, const Int& q, uint64_t lj) {
    std::vector<uint64_t> out;
    Int L(static_cast<unsigned long>(lj));
    for (uint64_t t = 0; t < lj; ++t) {
        Int tz(static_cast<unsigned long>(t));
        if (mod_reduce(2 * tz - a, L) != 0) continue;
        if (mod_reduce(tz * tz - q, L) != 0) continue;
        out.push_back(t);
    }
    return out;
}

}  // namespace

int frobenius_mu(const CurveQ& E, const Int& q, const Int& ell, int cap,
                 const EllipticOptions& opt) {
    if (q == ell) throw std::invalid_argument("frobenius_mu: ell must differ from q");
    auto a = count_points(E, q, opt).second;
    Int disc = a * a - 4 * q;
    long vd = val_exact(disc, ell);
    int maxj = static_cast<int>(std::min<long>(cap, vd / 2));
    int mu = 0;
    for (int j = 1; j <= maxj; ++j) {
        Int ljz = pow_int(ell, j);
        uint64_t lj = ljz.get_ui();
        bool scalar = false;
        for (uint64_t t : scalar_candidates(a, q, lj)) {
            Int d_ord = element_order(Int(static_cast<unsigned long>(t)), ljz,
                                      (ell - 1) * pow_int(ell, j - 1));
            int d = static_cast<int>(d_ord.get_ui());
            Int M = count_points_ext(a, q, d);
            if (val_exact(M, ell) < 2 * j) continue;
            if (mod_reduce(pow_int(q, d) - 1, ljz) != 0) continue;
            ScalarOutcome res = scalar_action(E, q, ell.get_ui(), j, t, d, M, opt);
            if (res == ScalarOutcome::Scalar) {
                scalar = true;
                break;
            }
            if (res == ScalarOutcome::Exhausted)
                throw budget_error("frobenius_mu: torsion sampling budget exhausted");
        }
        if (!scalar) return mu;
        mu = j;
    }
    return mu;
}

ClassLabel frobenius_class(const CurveQ& E, const Int& q, const Int& p, int n,
                           const EllipticOptions& opt) {
    if (q == p) throw hypothesis_error("frobenius_class: q divides the level");
    auto a = count_points(E, q, opt).second;
    Int disc = a * a - 4 * q;
    long vd = val_exact(disc, p);
    int mu = vd >= 2 ? frobenius_mu(E, q, p, n, opt) : 0;
    return classify_from_chi(a, q, mu, p, n);
}

std::vector<ClassLabel> frobenius_class_N(const CurveQ& E, const Int& q, const Int& N,
                                          const EllipticOptions& opt) {
    if (mod_reduce(N, 2) == 0) throw std::invalid_argument("frobenius_class_N: N must be odd");
    std::vector<ClassLabel> out;
    for (auto& [p, e] : factor(N)) out.push_back(frobenius_class(E, q, p, e, opt));
    return out;
}

DeltaData delta_q(const CurveQ& E, const Int& q, const EllipticOptions& opt) {
    auto a = count_points(E, q, opt).second;
    Int disc = a * a - 4 * q;
    if (disc == 0) throw hypothesis_error("delta_q: a_q^2 = 4q");
    Int square_part = 1, m = 1;
    for (auto& [p, e] : factor(disc)) {
        square_part *= pow_int(p, e / 2);
        if (e % 2) m *= p;
    }
    if (disc < 0) m = -m;
    Int bhat;
    if (mod_reduce(m, 4) == 1) {
        bhat = square_part;
    } else {
        if (mod_reduce(square_part, 2) != 0) throw std::logic_error("delta_q: parity failure");
        bhat = square_part / 2;
    }
    Int b = 1;
    for (auto& [ell, e] : factor(bhat)) {
        if (bhat == 1) break;
        int mu = frobenius_mu(E, q, ell, e, opt);
        b *= pow_int(ell, mu);
    }
    DeltaData out;
    out.a_q = a;
    out.b_q = b;
    out.delta_q = disc / (b * b);
    Int r = mod_reduce(out.delta_q, 4);
    if (r != 0 && r != 1) throw std::logic_error("delta_q: delta not 0,1 mod 4");
    out.delta01 = static_cast<int>(r.get_ui());
    return out;
}

Mat2 duke_toth_matrix(const CurveQ& E, const Int& q, const Int& N, const EllipticOptions& opt) {
    DeltaData d = delta_q(E, q, opt);
    Int delta(d.delta01);
    Int m11 = (d.a_q + d.b_q * delta) / 2;
    Int m12 = d.b_q;
    Int m21 = d.b_q * (d.delta_q - delta) / 4;
    Int m22 = (d.a_q - d.b_q * delta) / 2;
    return Mat2(m11, m12, m21, m22, N);
}

// ---- Tate periods ----

namespace {

// Coefficients S_0..S_K with j(tau) = sum_k S_k tau^(k-1); S_0 = 1, S_1 = 744.
std::vector<Int> j_series(int K) {
    int len = K + 1;
    std::vector<Int> D(len, 0);
    D[0] = 1;
    for (int n = 1; n <= K; ++n) {
        std::vector<Int> nxt(len, 0);
        for (int i = 0; i * n <= K && i <= 24; ++i) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), 24, i);
            if (i % 2) binom = -binom;
            for (int t = 0; t + i * n < len; ++t)
                if (D[t] != 0) nxt[t + i * n] += binom * D[t];
        }
        D = std::move(nxt);
    }
    std::vector<Int> E4(len, 0);
    E4[0] = 1;
    for (int n = 1; n <= K; ++n) {
        Int s3 = 0;
        for (int dd = 1; dd <= n; ++dd)
            if (n % dd == 0) s3 += Int(dd) * dd * dd;
        E4[n] = 240 * s3;
    }
    auto mul_trunc = [&](const std::vector<Int>& f, const std::vector<Int>& g) {
        std::vector<Int> h(len, 0);
        for (int i = 0; i < len; ++i) {
            if (f[i] == 0) continue;
            for (int jx = 0; i + jx < len; ++jx)
                if (g[jx] != 0) h[i + jx] += f[i] * g[jx];
        }
        return h;
    };
    std::vector<Int> num = mul_trunc(mul_trunc(E4, E4), E4);
    std::vector<Int> inv(len, 0);
    inv[0] = 1;
    for (int k = 1; k < len; ++k) {
        Int acc = 0;
        for (int i = 1; i <= k; ++i) acc += D[i] * inv[k - i];
        inv[k] = -acc;
    }
    std::vector<Int> S = mul_trunc(num, inv);
    if (S[0] != 1 || S[1] != 744 || S[2] != 196884) throw std::logic_error("j_series: self-test failed");
    return S;
}

}  // namespace

TatePeriod tate_period(const CurveQ& E, const Int& q, int precision) {
    ReductionType red = reduction_type(E, q);
    if (red != ReductionType::SplitMultiplicative && red != ReductionType::NonsplitMultiplicative)
        throw hypothesis_error("tate_period: reduction at q is not multiplicative");
    long m = val_exact(E.disc, q);
    if (precision <= m) throw std::invalid_argument("tate_period: precision must exceed v(theta)");
    int B = precision + static_cast<int>(m) + 2;
    Int M = pow_int(q, B);
    Int Dunit = E.disc / pow_int(q, m);
    Int J = mod_reduce(mod_reduce(E.c4 * E.c4 * E.c4, M) * inv_mod(mod_reduce(Dunit, M), M), M);
    int K = B / static_cast<int>(m) + 2;
    std::vector<Int> S = j_series(K + 2);
    Int qm = pow_int(q, m);
    // theta = q^m u solves 1/u = J - q^m E(q^m u), E the regular series part.
    auto eval_tail = [&](const Int& u) {
        Int acc = 0, pw = 1;
        for (int k = 0; k <= K; ++k) {
            acc = mod_reduce(acc + S[k + 1] * pw, M);
            pw = mod_reduce(pw * u * qm, M);
        }
        return acc;
    };
    Int u = inv_mod(J, M);
    int iters = B / (2 * static_cast<int>(m)) + 4;
    for (int i = 0; i < iters; ++i) u = inv_mod(mod_reduce(J - qm * eval_tail(u), M), M);
    Int resid = mod_reduce(inv_mod(u, M) + qm * eval_tail(u) - J, M);
    long need = B - 2 * static_cast<int>(m) - 2;
    if (val_cap(resid, q, need) < need)
        throw precision_error("tate_period: fixed point did not converge");
    TatePeriod out;
    out.q = q;
    out.m = m;
    out.theta.p = q;
    out.theta.valuation = m;
    out.theta.precision = precision - static_cast<int>(m);
    out.theta.unit = mod_reduce(u, pow_int(q, out.theta.precision));
    out.theta.exact_zero = false;
    return out;
}

MultParams mult_params(const CurveQ& E, const Int& q, const Int& p, int n) {
    ReductionType red = reduction_type(E, q);
    if (red != ReductionType::SplitMultiplicative && red != ReductionType::NonsplitMultiplicative)
        throw hypothesis_error("mult_params: reduction at q is not multiplicative");
    MultParams out;
    out.eps = red == ReductionType::SplitMultiplicative ? 1 : -1;
    long m = val_exact(E.disc, q);
    out.b2 = static_cast<int>(val_cap(Int(m), p, n));
    TatePeriod tp = tate_period(E, q, static_cast<int>(m) + 2);
    Int u = mod_reduce(tp.theta.unit, q);
    long t = val_exact(q - 1, p);
    out.b1 = 0;
    for (int s = out.b2; s >= 1; --s) {
        if (val_cap(Int(m), p, s) < s) continue;
        long e = std::min<long>(s, t);
        if (pow_mod(u, (q - 1) / pow_int(p, e), q) == 1) {
            out.b1 = s;
            break;
        }
    }
    return out;
}

PValued unit_root(const CurveQ& E, const Int& p, int n, const EllipticOptions& opt) {
    auto a = count_points(E, p, opt).second;
    if (mod_reduce(a, p) == 0) throw hypothesis_error("unit_root: reduction at p is not ordinary");
    std::vector<Int> f = {p, -a, 1};
    TruncatedPadic r = hensel_root(f, mod_reduce(a, p), p, n);
    return PValued(r.residue(n), p, n);
}

Mat2 frobenius_matrix_oracle(const CurveQ& E, const Int& q, const Int& ell, int j,
                             const EllipticOptions& opt) {
    Int ljz = pow_int(ell, j);
    if (ljz > 81) throw budget_error("frobenius_matrix_oracle: ell^j exceeds the guard");
    uint64_t lj = ljz.get_ui();
    auto a = count_points(E, q, opt).second;
    Int expo = 1;
    for (const ClassLabel& L : enumerate_classes(ell, j)) {
        Int o = matrix_order(representative(L), ell, j);
        expo = expo / gcd(expo, o) * o;
    }
    for (const Int& dz : divisors(expo)) {
        int d = static_cast<int>(dz.get_ui());
        Int M = count_points_ext(a, q, d);
        if (val_exact(M, ell) < 2 * j) continue;
        if (mod_reduce(pow_int(q, d) - 1, ljz) != 0) continue;
        Fq F(q.get_ui(), d);
        ECF C = ECF::from_curve(E, F);
        std::mt19937_64 rng(mix_seed(opt.seed, q.get_ui(), ell.get_ui() * 1000 + j, 7777 + d));
        BasisResult basis = find_basis(C, M, ell.get_ui(), j, opt.sample_budget, rng);
        if (basis.outcome != BasisOutcome::Found) continue;
        auto table = span_table(C, basis.P1, basis.P2, lj);
        if (table.empty()) continue;
        auto dlog = [&](const ECF::Pt& P) {
            auto it = table.find(pt_key(P));
            if (it == table.end())
                throw std::logic_error("frobenius_matrix_oracle: image escaped E[l^j]");
            return it->second;
        };
        auto [a11, a21] = dlog(C.frobenius(basis.P1));
        auto [a12, a22] = dlog(C.frobenius(basis.P2));
        Mat2 out(a11, a12, a21, a22, ljz);
        if (out.det() != mod_reduce(q, ljz))
            throw std::logic_error("frobenius_matrix_oracle: determinant is not q");
        return out;
    }
    throw budget_error("frobenius_matrix_oracle: no usable extension degree found");
}

// ---- cache ----

FrobeniusCache::FrobeniusCache(std::string path, std::string curve_key)
    : path_(std::move(path)), curve_key_(std::move(curve_key)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || rec.value("curve", "") != curve_key_) continue;
        FrobeniusData d;
        d.q = Int(rec.at("q").get<std::string>());
        d.a_q = Int(rec.at("a").get<std::string>());
        if (rec.contains("mu"))
            for (auto& [k, v] : rec.at("mu").items()) d.mu[std::stoul(k)] = v.get<int>();
        if (rec.contains("delta")) d.delta_q = Int(rec.at("delta").get<std::string>());
        if (rec.contains("b")) d.b_q = Int(rec.at("b").get<std::string>());
        if (rec.contains("d01")) d.delta01 = rec.at("d01").get<int>();
        records_[d.q] = d;
    }
}

std::optional<FrobeniusData> FrobeniusCache::lookup(const Int& q) const {
    std::lock_guard<std::mutex> lock(mtx_);
    auto it = records_.find(q);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void FrobeniusCache::store(const FrobeniusData& d) {
    std::lock_guard<std::mutex> lock(mtx_);
    records_[d.q] = d;
    if (path_.empty()) return;
    nlohmann::json rec;
    rec["curve"] = curve_key_;
    rec["q"] = to_str(d.q);
    rec["a"] = to_str(d.a_q);
    if (!d.mu.empty()) {
        nlohmann::json mu;
        for (auto& [k, v] : d.mu) mu[std::to_string(k)] = v;
        rec["mu"] = mu;
    }
    if (d.delta_q) rec["delta"] = to_str(*d.delta_q);
    if (d.b_q) rec["b"] = to_str(*d.b_q);
    if (d.delta01) rec["d01"] = *d.delta01;
    std::ofstream out(path_, std::ios::app);
    out << rec.dump() << "\n";
}

}  // namespace gl2dc
