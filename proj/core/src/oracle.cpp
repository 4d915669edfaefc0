#include "gl2dc/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace gl2dc {
namespace oracle {

namespace {

uint64_t u64_of(const Int& x) {
    if (x < 0 || !x.fits_ulong_p()) throw std::invalid_argument("oracle: value out of uint64 range");
    return x.get_ui();
}

struct WSpace {
    uint64_t m;
    std::vector<PrimVec> pts;
    std::vector<int32_t> index;  // (x*m + y) -> position in pts, -1 otherwise

    int32_t at(uint64_t x, uint64_t y) const { return index[x * m + y]; }
};

WSpace make_wspace(uint64_t m, const Limits& lim) {
    if (m < 2) throw std::invalid_argument("enumerate_W: modulus must be >= 2");
    if (m * m > lim.max_w * 4) throw budget_error("enumerate_W: modulus exceeds size guard");
    WSpace w;
    w.m = m;
    w.index.assign(m * m, -1);
    for (uint64_t x = 0; x < m; ++x)
        for (uint64_t y = 0; y < m; ++y) {
            uint64_t g = gcd_u64(gcd_u64(x, y), m);
            if (g == 1) {
                w.index[x * m + y] = static_cast<int32_t>(w.pts.size());
                w.pts.push_back({static_cast<uint32_t>(x), static_cast<uint32_t>(y)});
            }
        }
    if (w.pts.size() > lim.max_w) throw budget_error("enumerate_W: |W| exceeds size guard");
    return w;
}

}  // namespace

std::vector<PrimVec> enumerate_W(uint64_t m, const Limits& lim) { return make_wspace(m, lim).pts; }

Mat2u to_mat2u(const Mat2& g) {
    return Mat2u{u64_of(g.a), u64_of(g.b), u64_of(g.c), u64_of(g.d)};
}

namespace {

// Partition W under the closure of the given generator actions; returns the
// orbit id of every point and the orbit sizes.
struct Orbits {
    std::vector<int32_t> id;
    std::vector<uint64_t> size;
};

Orbits compute_orbits(const WSpace& w, const std::vector<Mat2u>& gens, const Limits& lim) {
    Orbits o;
    o.id.assign(w.pts.size(), -1);
    uint64_t steps = 0;
    std::vector<int32_t> stack;
    for (size_t s = 0; s < w.pts.size(); ++s) {
        if (o.id[s] >= 0) continue;
        int32_t oid = static_cast<int32_t>(o.size.size());
        uint64_t count = 0;
        stack.push_back(static_cast<int32_t>(s));
        o.id[s] = oid;
        while (!stack.empty()) {
            int32_t cur = stack.back();
            stack.pop_back();
            ++count;
            uint64_t x = w.pts[cur].x, y = w.pts[cur].y;
            for (const auto& g : gens) {
                uint64_t nx = (g.a * x + g.b * y) % w.m;
                uint64_t ny = (g.c * x + g.d * y) % w.m;
                int32_t t = w.at(nx, ny);
                if (t < 0) throw std::logic_error("orbit: action left W");
                if (++steps > lim.max_steps) throw budget_error("orbit: step guard exceeded");
                if (o.id[t] < 0) {
                    o.id[t] = oid;
                    stack.push_back(t);
                }
            }
        }
        o.size.push_back(count);
    }
    return o;
}

}  // namespace

DCType orbit_type(const std::vector<Mat2u>& d_gens, const std::vector<Mat2u>& i_gens, uint64_t m,
                  const Limits& lim) {
    WSpace w = make_wspace(m, lim);
    Orbits dorb = compute_orbits(w, d_gens, lim);
    Orbits iorb = i_gens.empty() ? Orbits{} : compute_orbits(w, i_gens, lim);
    auto isize = [&](size_t pt) -> uint64_t {
        if (i_gens.empty()) return 1;
        return iorb.size[iorb.id[pt]];
    };
    // I-orbit size must be constant on every D-orbit (I normal in D).
    std::vector<uint64_t> c_of_orbit(dorb.size.size(), 0);
    for (size_t pt = 0; pt < w.pts.size(); ++pt) {
        uint64_t c = isize(pt);
        uint64_t& slot = c_of_orbit[dorb.id[pt]];
        if (slot == 0)
            slot = c;
        else if (slot != c)
            throw std::invalid_argument("orbit_type: inconsistent inertia orbit sizes within a D-orbit");
    }
    std::map<std::pair<uint64_t, uint64_t>, Int> counts;
    for (size_t k = 0; k < dorb.size.size(); ++k) counts[{dorb.size[k], c_of_orbit[k]}] += 1;
    DCType d;
    for (auto& [bc, count] : counts) d.add_term(count, bc.first, bc.second);
    d.canonicalize();
    return d;
}

DCType orbit_type_cyclic(const Mat2& g, const Limits& lim) {
    return orbit_type({to_mat2u(g)}, {}, u64_of(g.mod), lim);
}

std::vector<Mat2u> mult_d_gens(const Int& p, int n, const Int& alpha, int eps, int b1) {
    Int m = pow_int(p, n);
    Mat2 g1(alpha, 0, 0, eps, m);
    Mat2 g2(1, pow_int(p, b1), 0, 1, m);
    return {to_mat2u(g1), to_mat2u(g2)};
}

std::vector<Mat2u> mult_i_gens(const Int& p, int n, int b2) {
    Int m = pow_int(p, n);
    return {to_mat2u(Mat2(1, pow_int(p, b2), 0, 1, m))};
}

namespace {

Int primitive_root(const Int& p, int n) {
    Int m = pow_int(p, n);
    Int phi = (p - 1) * pow_int(p, n - 1);
    for (Int g = 2; g < m; ++g) {
        if (mod_reduce(g, p) == 0) continue;
        if (unit_order_mod_prime_power(g, p, n) == phi) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

}  // namespace

std::vector<Mat2u> ord_d_gens(const Int& p, int n, const Int& alpha) {
    Int m = pow_int(p, n);
    Int g0 = primitive_root(p, n);
    Mat2 g1(alpha, 0, 0, inv_mod(alpha, m), m);
    Mat2 g2(g0, 0, 0, 1, m);
    Mat2 g3(1, 1, 0, 1, m);
    return {to_mat2u(g1), to_mat2u(g2), to_mat2u(g3)};
}

std::vector<Mat2u> ord_i_gens(const Int& p, int n) {
    Int m = pow_int(p, n);
    Int g0 = primitive_root(p, n);
    return {to_mat2u(Mat2(g0, 0, 0, 1, m)), to_mat2u(Mat2(1, 1, 0, 1, m))};
}

std::map<uint64_t, Int> lambda_profile(const Mat2& g, const Int& p, int n, const Limits& lim) {
    // Direct route: orbit sizes of <g> on W.
    DCType direct = orbit_type_cyclic(g, lim);
    std::map<uint64_t, Int> lam_direct;
    for (auto& t : direct.terms) lam_direct[t.b] += t.count * Int(static_cast<unsigned long>(t.b));

    // Smith route: lambda-tilde from kernel lengths, then Moebius inversion.
    Int og = matrix_order(g, p, n);
    auto lam_tilde = [&](const Int& k) -> Int {
        Mat2 gk = mat_pow(g, k);
        SmithForm s = smith(mat_sub(gk, Mat2::identity(g.mod)), p, n);
        long l0 = std::min<long>(s.e1, n) + std::min<long>(s.e2, n);
        long l1 = std::min<long>(s.e1, n - 1) + std::min<long>(s.e2, n - 1);
        return pow_int(p, l0) - pow_int(p, l1);
    };
    std::map<uint64_t, Int> lam_smith;
    for (const Int& k : divisors(og)) {
        auto fac = factor(k);
        Int total = 0;
        for (size_t mask = 0; mask < (size_t(1) << fac.size()); ++mask) {
            Int d = 1;
            int bits = 0;
            for (size_t i = 0; i < fac.size(); ++i)
                if (mask & (size_t(1) << i)) {
                    d *= fac[i].first;
                    ++bits;
                }
            Int term = lam_tilde(k / d);
            total += bits % 2 == 0 ? term : -term;
        }
        if (total != 0) lam_smith[u64_of(k)] = total;
    }
    if (lam_smith != lam_direct)
        throw std::logic_error("lambda_profile: Smith-form route disagrees with direct orbit count");
    return lam_smith;
}

std::vector<Int> r_poly(const Int& alpha, int mu, int k, const Int& p) {
    std::vector<Int> f(k / 2 + 1, 0);
    for (int i = 0; 2 * i <= k; ++i) {
        Int binom;
        mpz_bin_uiui(binom.get_mpz_t(), k, 2 * i);
        f[i] = binom * pow_int(alpha, k - 2 * i) * pow_int(p, static_cast<long>(mu) * i);
    }
    return f;
}

std::vector<Int> s_poly(const Int& alpha, int mu, int k, const Int& p) {
    std::vector<Int> f((k - 1) / 2 + 1, 0);
    for (int i = 0; 2 * i + 1 <= k; ++i) {
        Int binom;
        mpz_bin_uiui(binom.get_mpz_t(), k, 2 * i + 1);
        f[i] = binom * pow_int(alpha, k - 2 * i - 1) * pow_int(p, static_cast<long>(mu) * i);
    }
    return f;
}

namespace {

std::vector<Int> poly_mul(const std::vector<Int>& f, const std::vector<Int>& g) {
    std::vector<Int> h(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
    return h;
}

}  // namespace

std::vector<Int> t_poly(const Int& alpha, int mu, int k, const Int& p) {
    if (k < 1) throw std::invalid_argument("t_poly: k must be >= 1");
    std::vector<Int> r = r_poly(alpha, mu, k, p);
    r[0] -= 1;
    std::vector<Int> t = poly_mul(r, r);
    std::vector<Int> s2 = poly_mul(s_poly(alpha, mu, k, p), s_poly(alpha, mu, k, p));
    // subtract x * p^mu * s(x)^2
    Int pm = pow_int(p, mu);
    t.resize(std::max(t.size(), s2.size() + 1), 0);
    for (size_t i = 0; i < s2.size(); ++i) t[i + 1] -= pm * s2[i];
    while (t.size() > 1 && t.back() == 0) t.pop_back();
    return t;
}

long t_eval_valuation(const Int& alpha, int mu, int k, const Int& beta, const Int& p, long cap) {
    std::vector<Int> t = t_poly(alpha, mu, k, p);
    Int v = 0;
    for (auto it = t.rbegin(); it != t.rend(); ++it) v = v * beta + *it;
    return val_cap(v, p, cap);
}

Int z_mu_definitional(const PValued& alpha, int mu, int prec) {
    const Int& p = alpha.p;
    Int mod = pow_int(p, prec);
    if (mod > 2'000'000) throw budget_error("z_mu_definitional: p^prec exceeds enumeration guard");
    int k = static_cast<int>(residue_order(alpha).get_ui());
    std::vector<Int> t = t_poly(alpha.value, mu, k, p);
    long best_v = -1;
    Int best_x = -1;
    for (Int x = 0; x < mod; ++x) {
        if (poly_eval(t, x, mod) != 0) continue;
        long v = val_cap(x, p, prec);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    if (best_x < 0) throw std::logic_error("z_mu_definitional: no root found");
    return best_x;
}

BrutePartition brute_conjugacy_partition(const Int& p, int n, const Limits& lim) {
    Int mz = pow_int(p, n);
    if (!mz.fits_ulong_p()) throw budget_error("brute_conjugacy_partition: modulus too large");
    uint64_t m = mz.get_ui();
    uint64_t total = m * m * m * m;
    if (total > lim.max_steps) throw budget_error("brute_conjugacy_partition: size guard exceeded");

    auto idx = [m](const Mat2u& g) { return ((g.a * m + g.b) * m + g.c) * m + g.d; };
    auto mul = [m](const Mat2u& x, const Mat2u& y) {
        return Mat2u{(x.a * y.a + x.b * y.c) % m, (x.a * y.b + x.b * y.d) % m,
                     (x.c * y.a + x.d * y.c) % m, (x.c * y.b + x.d * y.d) % m};
    };

    Int g0 = primitive_root(p, n);
    std::vector<Mat2> hs = {Mat2(1, 1, 0, 1, mz), Mat2(1, 0, 1, 1, mz), Mat2(g0, 0, 0, 1, mz)};
    std::vector<std::pair<Mat2u, Mat2u>> conj;
    for (auto& h : hs) conj.emplace_back(to_mat2u(h), to_mat2u(h.inverse()));

    std::vector<int32_t> cls(total, -1);
    BrutePartition part;
    std::vector<Mat2u> stack;
    for (uint64_t a = 0; a < m; ++a)
        for (uint64_t b = 0; b < m; ++b)
            for (uint64_t c = 0; c < m; ++c)
                for (uint64_t d = 0; d < m; ++d) {
                    uint64_t det = ((a * d) % m + m - (b * c) % m) % m;
                    if (gcd_u64(det, m) != 1) continue;
                    Mat2u g{a, b, c, d};
                    if (cls[idx(g)] >= 0) continue;
                    int32_t id = static_cast<int32_t>(part.reps.size());
                    part.reps.emplace_back(Int(static_cast<unsigned long>(a)), Int(static_cast<unsigned long>(b)),
                                           Int(static_cast<unsigned long>(c)), Int(static_cast<unsigned long>(d)), mz);
                    uint64_t size = 0;
                    stack.push_back(g);
                    cls[idx(g)] = id;
                    while (!stack.empty()) {
                        Mat2u cur = stack.back();
                        stack.pop_back();
                        ++size;
                        for (auto& [h, hi] : conj) {
                            Mat2u t = mul(mul(h, cur), hi);
                            if (cls[idx(t)] < 0) {
                                cls[idx(t)] = id;
                                stack.push_back(t);
                            }
                        }
                    }
                    part.sizes.push_back(Int(static_cast<unsigned long>(size)));
                }
    return part;
}

}  // namespace oracle
}  // namespace gl2dc
