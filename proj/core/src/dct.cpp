#include "gl2dc/dct.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <sstream>

namespace gl2dc {

namespace {

uint64_t to_u64(const Int& x, const char* what) {
    if (x < 0 || !x.fits_ulong_p()) throw std::invalid_argument(std::string(what) + ": value out of range");
    return x.get_ui();
}

}  // namespace

void DCType::add_term(const Int& count, uint64_t b, uint64_t c) {
    if (count < 0) throw std::invalid_argument("DCType: negative count");
    if (count == 0) return;
    if (c == 0 || b % c != 0) throw std::invalid_argument("DCType: c must divide b");
    terms.push_back({count, b, c});
}

void DCType::canonicalize() {
    std::sort(terms.begin(), terms.end(), [](const DCTerm& x, const DCTerm& y) {
        return x.b != y.b ? x.b < y.b : x.c < y.c;
    });
    std::vector<DCTerm> merged;
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().b == t.b && merged.back().c == t.c)
            merged.back().count += t.count;
        else
            merged.push_back(t);
    }
    terms = std::move(merged);
}

Int DCType::mass() const {
    Int s = 0;
    for (auto& t : terms) s += t.count * Int(static_cast<unsigned long>(t.b));
    return s;
}

bool DCType::unramified() const {
    for (auto& t : terms)
        if (t.c != 1) return false;
    return true;
}

bool DCType::operator==(const DCType& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (size_t i = 0; i < terms.size(); ++i)
        if (terms[i].b != o.terms[i].b || terms[i].c != o.terms[i].c ||
            terms[i].count != o.terms[i].count)
            return false;
    return true;
}

std::string DCType::to_string() const {
    if (terms.empty()) return "0";
    bool pair_form = !unramified();
    std::ostringstream os;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " + ";
        os << terms[i].count << " x ";
        if (pair_form)
            os << "(" << terms[i].b << "," << terms[i].c << ")";
        else
            os << terms[i].b;
    }
    return os.str();
}

std::string DCType::json() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) os << ",";
        os << "{\"count\":" << terms[i].count << ",\"b\":" << terms[i].b << ",\"c\":" << terms[i].c
           << "}";
    }
    os << "]";
    return os.str();
}

DCType parse_dctype(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto fail = [&] { throw std::invalid_argument("parse_dctype: cannot parse: " + text); };
    DCType d;
    size_t i = 0;
    auto number = [&]() -> Int {
        size_t k = i;
        while (k < s.size() && isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) fail();
        Int v(s.substr(i, k - i));
        i = k;
        return v;
    };
    while (i < s.size()) {
        Int count = number();
        if (i >= s.size() || s[i] != 'x') fail();
        ++i;
        uint64_t b, c = 1;
        if (i < s.size() && s[i] == '(') {
            ++i;
            b = to_u64(number(), "parse_dctype b");
            if (i >= s.size() || s[i] != ',') fail();
            ++i;
            c = to_u64(number(), "parse_dctype c");
            if (i >= s.size() || s[i] != ')') fail();
            ++i;
        } else {
            b = to_u64(number(), "parse_dctype b");
        }
        d.add_term(count, b, c);
        if (i < s.size()) {
            if (s[i] != '+') fail();
            ++i;
        }
    }
    d.canonicalize();
    return d;
}

std::vector<FactorShape> to_factorization(const DCType& d) {
    std::vector<FactorShape> out;
    for (auto& t : d.terms) out.push_back({t.count, t.c, t.b / t.c});
    return out;
}

// ---- standard types via the kernel-profile arithmetic functions ----

namespace {

struct ProfileEntry {
    uint64_t k;  // coprime to p
    int e;       // capped into [0, n]
};

// lambda-tilde(k) = p^{l0(k)} - p^{l1(k)} with
//   l_t(k) = sum_i [k_i | k] * min(v_p(k) + e_i, n - t).
Int lambda_tilde(const Int& k, const Int& p, int n, const std::vector<ProfileEntry>& prof) {
    long u = val_cap(k, p, 2 * n + 2);
    long l0 = 0, l1 = 0;
    for (auto& pe : prof) {
        if (mod_reduce(k, Int(static_cast<unsigned long>(pe.k))) != 0) continue;
        l0 += std::min<long>(u + pe.e, n);
        l1 += std::min<long>(u + pe.e, n - 1);
    }
    return pow_int(p, l0) - pow_int(p, l1);
}

Int lambda_exact(const Int& k, const Int& p, int n, const std::vector<ProfileEntry>& prof) {
    // Moebius inversion over squarefree divisors of k.
    auto fac = factor(k);
    size_t np = fac.size();
    Int total = 0;
    for (size_t mask = 0; mask < (size_t(1) << np); ++mask) {
        Int d = 1;
        int bits = 0;
        for (size_t i = 0; i < np; ++i)
            if (mask & (size_t(1) << i)) {
                d *= fac[i].first;
                ++bits;
            }
        Int term = lambda_tilde(k / d, p, n, prof);
        total += (bits % 2 == 0) ? term : -term;
    }
    return total;
}

DCType dct_from_profile(const Int& p, int n, std::vector<ProfileEntry> prof) {
    for (auto& pe : prof) {
        if (pe.k == 0 || Int(static_cast<unsigned long>(pe.k)) % p == 0)
            throw std::invalid_argument("std_dct: k must be nonzero and coprime to p");
        pe.e = std::clamp(pe.e, 0, n);
    }
    // support is contained in {k_i p^u} and {lcm(k_i) p^u}, 0 <= u <= n
    std::vector<uint64_t> ks;
    for (auto& pe : prof) ks.push_back(pe.k);
    if (prof.size() == 2) ks.push_back(lcm_u64(prof[0].k, prof[1].k));
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    DCType d;
    for (uint64_t k0 : ks) {
        Int kq(static_cast<unsigned long>(k0));
        for (int u = 0; u <= n; ++u, kq *= p) {
            Int lam = lambda_exact(kq, p, n, prof);
            if (lam == 0) continue;
            if (lam < 0) throw std::logic_error("std_dct: negative orbit mass");
            if (lam % kq != 0)
                throw std::invalid_argument("std_dct: non-integral orbit count for k=" + to_str(kq));
            d.add_term(lam / kq, to_u64(kq, "std_dct orbit size"));
        }
    }
    d.canonicalize();
    if (d.mass() != coset_space_size(p, n)) throw std::logic_error("std_dct: mass invariant violated");
    return d;
}

void check_ab(int a, int b, int n) {
    if (!(0 <= a && a <= b && b <= n))
        throw std::invalid_argument("std_dct: need 0 <= a <= b <= n");
}

}  // namespace

DCType std_dct(const Int& p, int n, uint64_t k0, int a) { return std_dct(p, n, k0, a, a); }

DCType std_dct(const Int& p, int n, uint64_t k0, int a, int b) {
    check_ab(a, b, n);
    return dct_from_profile(p, n, {{k0, a}, {k0, b}});
}

DCType std_dct2(const Int& p, int n, uint64_t k1, uint64_t k2, int a) {
    return std_dct2(p, n, k1, k2, a, a);
}

DCType std_dct2(const Int& p, int n, uint64_t k1, uint64_t k2, int a, int b) {
    check_ab(a, b, n);
    if (k1 == k2) throw std::invalid_argument("std_dct2: k1 and k2 must be distinct");
    return dct_from_profile(p, n, {{k1, a}, {k2, b}});
}

DCType tensor_identity() {
    DCType d;
    d.add_term(1, 1, 1);
    return d;
}

DCType tensor(const DCType& d1, const DCType& d2) {
    DCType out;
    for (auto& t1 : d1.terms)
        for (auto& t2 : d2.terms) {
            unsigned __int128 wide_b =
                static_cast<unsigned __int128>(t1.b) / gcd_u64(t1.b, t2.b) * t2.b;
            if (wide_b > ~uint64_t(0)) throw std::invalid_argument("tensor: orbit size overflow");
            uint64_t b = lcm_u64(t1.b, t2.b);
            uint64_t c = lcm_u64(t1.c, t2.c);
            Int count = t1.count * Int(static_cast<unsigned long>(t1.b)) * t2.count *
                        Int(static_cast<unsigned long>(t2.b));
            Int bb(static_cast<unsigned long>(b));
            if (count % bb != 0) throw std::logic_error("tensor: non-integral count");
            out.add_term(count / bb, b, c);
        }
    out.canonicalize();
    return out;
}

// ---- z^mu and the u-valuations ----

TruncatedPadic z_mu(const PValued& alpha, int mu, int working_precision) {
    if (!alpha.is_unit()) throw std::invalid_argument("z_mu: alpha must be a unit");
    if (mu < 0) throw std::invalid_argument("z_mu: mu must be >= 0");
    int P = std::max(working_precision, 1);
    // The Teichmuller lift depends only on alpha mod p and is exact to any
    // precision; alpha itself contributes its own n digits.
    PValued w = teichmuller(PValued(alpha.value, alpha.p, P));
    auto tw = TruncatedPadic::from_residue(w);
    auto ta = TruncatedPadic::from_residue(PValued(alpha.value, alpha.p, std::min(P, alpha.n)));
    auto diff = tw - ta;
    auto z = diff * diff;
    z.valuation -= mu;
    return z;
}

namespace {

// Exact integer (w - alpha)^2 with w the Teichmuller lift carried to
// precision prec; well defined mod p^(n + v_alpha).
Int z0_numerator(const PValued& alpha, int prec) {
    PValued w = teichmuller(PValued(alpha.value, alpha.p, prec));
    Int diff = w.value - alpha.value;
    return diff * diff;
}

}  // namespace

UValues u_values(const ClassLabel& L) {
    UValues u;
    const Int& p = L.p;
    int n = L.n;
    PValued al(L.alpha, p, n);
    long va = v_alpha(al);
    int prec = 2 * n + 2;
    switch (L.kind) {
        case ClassKind::IPrimeMuNu: {
            long cap = n + va;
            Int Z = z0_numerator(al, prec);  // = p^mu * z^mu(alpha)
            Int T = pow_int(p, L.nu + L.mu) * L.beta - Z;
            u.u1 = std::min<long>(val_cap(T, p, cap) - L.mu, n);
            break;
        }
        case ClassKind::IMinus:
        case ClassKind::IPlus: {
            long cap = n + va;
            Int Z = z0_numerator(al, prec);
            Int T = pow_int(p, 2 * L.mu) * L.beta - Z;
            u.u2 = std::min<long>(val_cap(T, p, cap) - L.mu, n);
            break;
        }
        case ClassKind::II: {
            long cap = n + va;
            Int Z = z0_numerator(al, prec);
            Int T = p * L.beta - Z;
            u.u3 = std::min<long>(val_cap(T, p, cap), n);
            if (p == 3 && n >= 2 && val_cap(L.beta, p, n - 1) == 0) {
                int eps = (mod_reduce(L.alpha, 3) == 1) ? 1 : -1;
                Int x1 = 6 * L.beta - 2 * L.alpha * L.alpha - 2 * eps * L.alpha + 1;
                Int x2 = 2 * L.alpha + eps;
                u.u4 = std::min<long>(
                    {2 * val_cap(x1, p, n) - 1, 2 * val_cap(x2, p, n), 2L * n - 2});
            }
            break;
        }
        default:
            break;
    }
    return u;
}

// ---- unramified type per conjugacy class (Table 4 dispatch) ----

DCType unramified_dct(const ClassLabel& L) {
    const Int& p = L.p;
    int n = L.n;
    PValued al(L.alpha, p, n);
    auto cap = [&](long x) { return static_cast<int>(std::min<long>(x, n)); };
    switch (L.kind) {
        case ClassKind::I: {
            long va = v_alpha(al);
            return std_dct(p, n, to_u64(residue_order(al), "o_ab"), cap(va));
        }
        case ClassKind::IPrimeMuNu: {
            long va = v_alpha(al);
            uint64_t k0 = to_u64(residue_order(al), "o_ab");
            long u1 = u_values(L).u1;
            if (va <= L.mu) return std_dct(p, n, k0, cap(va), cap(u1 + L.mu - va));
            return std_dct(p, n, k0, cap(L.mu), cap(u1));
        }
        case ClassKind::IPrimeMu: {
            long va = v_alpha(al);
            uint64_t k0 = to_u64(residue_order(al), "o_ab");
            if (va <= L.mu) return std_dct(p, n, k0, cap(va));
            return std_dct(p, n, k0, cap(L.mu), cap(2 * va - L.mu));
        }
        case ClassKind::IMinus:
        case ClassKind::IPlus: {
            long va = v_alpha(al);
            uint64_t k0 = to_u64(residue_order(al), "o_ab");
            if (va != L.mu) return std_dct(p, n, k0, cap(std::min<long>(va, L.mu)));
            return std_dct(p, n, k0, cap(L.mu), cap(u_values(L).u2));
        }
        case ClassKind::II: {
            uint64_t k0 = to_u64(residue_order(al), "o_ab");
            UValues u = u_values(L);
            if (u.u4 < 0) return std_dct(p, n, k0, 0, cap(u.u3));
            if (u.u4 % 2 == 0) return std_dct(p, n, k0, cap(u.u4 / 2));
            return std_dct(p, n, k0, cap((u.u4 - 1) / 2), cap((u.u4 + 1) / 2));
        }
        case ClassKind::III: {
            PValued be(L.beta, p, n);
            uint64_t ka = to_u64(residue_order(al), "o_ab");
            uint64_t kb = to_u64(residue_order(be), "o_bb");
            int a = cap(v_alpha(al));
            int b = cap(v_alpha(be));
            if (ka == kb) return std_dct(p, n, ka, std::min(a, b), std::max(a, b));
            // normalize to a <= b keeping each order paired with its valuation
            if (a > b) {
                std::swap(ka, kb);
                std::swap(a, b);
            }
            return std_dct2(p, n, ka, kb, a, b);
        }
        case ClassKind::IV: {
            // All W-orbits share the element order o_g.
            Mat2 rep = representative(L);
            Int og = matrix_order(rep, p, n);
            Int W = coset_space_size(p, n);
            if (W % og != 0) throw std::logic_error("unramified_dct: IV order does not divide |W|");
            DCType d;
            d.add_term(W / og, to_u64(og, "o_g"));
            d.canonicalize();
            return d;
        }
    }
    throw std::logic_error("unramified_dct: unreachable");
}

DCType unramified_dct(const Mat2& g, const Int& p, int n) {
    return unramified_dct(classify(g, p, n));
}

DCType unramified_dct_N(const Mat2& g) {
    if (mod_reduce(g.mod, 2) == 0) throw std::invalid_argument("unramified_dct_N: modulus must be odd");
    DCType acc = tensor_identity();
    for (auto& part : crt_split(g)) acc = tensor(acc, unramified_dct(classify(part)));
    return acc;
}

// ---- ramified pair types ----

namespace {

// Elements of (Z/p^n)^2 with v(x)=i exactly (i=n means x=0).
Int stratum_count(const Int& p, int n, int v) {
    if (v == n) return 1;
    return (p - 1) * pow_int(p, n - 1 - v);
}

DCType from_strata(const std::map<std::pair<Int, Int>, Int>& mass, const Int& p, int n) {
    DCType d;
    for (auto& [bc, m] : mass) {
        if (m % bc.first != 0) throw std::logic_error("ramified dct: non-integral orbit count");
        d.add_term(m / bc.first, to_u64(bc.first, "orbit size"), to_u64(bc.second, "inertia size"));
    }
    d.canonicalize();
    if (d.mass() != coset_space_size(p, n)) throw std::logic_error("ramified dct: mass invariant violated");
    return d;
}

}  // namespace

DCType mult_dct(const Int& p, int n, const Int& alpha, int eps, int b1, int b2) {
    if (!(0 <= b1 && b1 <= b2 && b2 <= n)) throw std::invalid_argument("mult_dct: need 0 <= b1 <= b2 <= n");
    if (eps != 1 && eps != -1) throw std::invalid_argument("mult_dct: eps must be +-1");
    PValued al(alpha, p, n);
    if (!al.is_unit()) throw std::invalid_argument("mult_dct: alpha must be a unit");
    long va = v_alpha(al);
    Int o_ab = residue_order(al);
    Int o_eps = eps == -1 ? 2 : 1;
    Int o_abp = o_ab * o_eps / gcd(o_ab, o_eps);
    Int o_a = unit_order(al);
    // D-orbit size of the stratum v(x)=i, v(y)=j; I-orbit size depends on j.
    auto d_orbit = [&](int i, int j) -> Int {
        if (j == n) return o_a;
        if (i >= b1 + j) return o_eps * pow_int(p, n - b1 - j);
        long e = std::max<long>(n - va - i, n - b1 - j);
        return o_abp * pow_int(p, e);
    };
    auto i_orbit = [&](int j) -> Int { return pow_int(p, std::max(n - b2 - j, 0)); };

    std::map<std::pair<Int, Int>, Int> mass;
    for (int j = 0; j <= n; ++j)
        mass[{d_orbit(0, j), i_orbit(j)}] += stratum_count(p, n, 0) * stratum_count(p, n, j);
    for (int i = 1; i <= n; ++i)
        mass[{d_orbit(i, 0), i_orbit(0)}] += stratum_count(p, n, i) * stratum_count(p, n, 0);
    return from_strata(mass, p, n);
}

DCType ord_dct(const Int& p, int n, const Int& alpha) {
    PValued al(alpha, p, n);
    if (!al.is_unit()) throw std::invalid_argument("ord_dct: alpha must be a unit");
    long va = v_alpha(al);
    Int o_ab = residue_order(al);
    std::map<std::pair<Int, Int>, Int> mass;
    // v(y) = 0: D-orbits of size o_ab p^(2n-va), I-orbits of size p^n.
    mass[{o_ab * pow_int(p, 2 * n - va), pow_int(p, n)}] += (p - 1) * pow_int(p, 2 * n - 1);
    // v(x) = 0, 0 < v(y) < n.
    for (int j = 1; j < n; ++j) {
        long e = std::max<long>(2 * n - 1 - va - j, n - 1);
        mass[{o_ab * (p - 1) * pow_int(p, e), (p - 1) * pow_int(p, n - 1)}] +=
            stratum_count(p, n, 0) * stratum_count(p, n, j);
    }
    // y = 0: a single orbit.
    mass[{(p - 1) * pow_int(p, n - 1), (p - 1) * pow_int(p, n - 1)}] += (p - 1) * pow_int(p, n - 1);
    return from_strata(mass, p, n);
}

}  // namespace gl2dc
