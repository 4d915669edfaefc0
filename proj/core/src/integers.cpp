#include "gl2dc/integers.hpp"

#include <algorithm>

namespace gl2dc {

Int mod_reduce(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int pow_mod(const Int& a, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::invalid_argument("inv_mod: " + to_str(a) + " is not invertible mod " + to_str(m));
    return r;
}

long val_cap(Int x, const Int& p, long cap) {
    x = abs(x);
    if (x == 0) return cap;
    long v = 0;
    Int q, r;
    while (v < cap) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        x = q;
        ++v;
        if (x == 0) return cap;
    }
    return v;
}

int legendre(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

Int crt2(const Int& a1, const Int& m1, const Int& a2, const Int& m2) {
    // x = a1 + m1 * ((a2 - a1) / m1 mod m2)
    Int t = mod_reduce((a2 - a1) * inv_mod(m1, m2), m2);
    return mod_reduce(a1 + m1 * t, m1 * m2);
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

uint64_t lcm_u64(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u64(a, b) * b;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic base set for n < 3.3 * 10^24 (covers all uint64).
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace

bool is_prime(const Int& p) {
    if (p < 2) return false;
    if (p.fits_ulong_p()) return miller_rabin_u64(p.get_ui());
    return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

std::vector<std::pair<Int, int>> factor(Int x) {
    if (x < 0) x = -x;
    if (x == 0) throw std::invalid_argument("factor: zero input");
    std::vector<std::pair<Int, int>> out;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
            x /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    Int d = 5;
    while (d * d <= x) {
        if (x == 1) break;
        if (is_prime(x)) break;
        strip(d);
        strip(d + 2);
        d += 6;
    }
    if (x > 1) out.emplace_back(x, 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> divisors(const Int& x) {
    auto f = factor(x);
    std::vector<Int> out{1};
    for (auto& [p, e] : f) {
        size_t base = out.size();
        Int pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int element_order(const Int& a, const Int& m, const Int& order_multiple) {
    if (mod_reduce(a, m) == 0 || gcd(a, m) != 1)
        throw std::invalid_argument("element_order: non-unit");
    Int o = order_multiple;
    if (pow_mod(a, o, m) != 1)
        throw std::invalid_argument("element_order: order_multiple is not a multiple of the order");
    for (auto& [p, e] : factor(order_multiple)) {
        for (int i = 0; i < e; ++i) {
            Int o2 = o / p;
            if (o % p == 0 && pow_mod(a, o2, m) == 1)
                o = o2;
            else
                break;
        }
    }
    return o;
}

Int unit_order_mod_prime_power(const Int& a, const Int& p, int n) {
    Int m = pow_int(p, n);
    Int group = (p - 1) * pow_int(p, n - 1);
    return element_order(mod_reduce(a, m), m, group);
}

std::vector<uint64_t> primes_up_to(uint64_t bound) {
    std::vector<uint64_t> primes;
    if (bound < 2) return primes;
    std::vector<uint8_t> sieve(bound + 1, 1);
    sieve[0] = sieve[1] = 0;
    for (uint64_t i = 2; i * i <= bound; ++i)
        if (sieve[i])
            for (uint64_t j = i * i; j <= bound; j += i) sieve[j] = 0;
    for (uint64_t i = 2; i <= bound; ++i)
        if (sieve[i]) primes.push_back(i);
    return primes;
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
    auto mix = [](uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

std::string to_str(const Int& x) { return x.get_str(); }

}  // namespace gl2dc
