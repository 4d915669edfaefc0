#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gl2dc {

using Int = mpz_class;

// Error categories used across the library.  The CLI maps them to exit codes.
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a mod m, normalized into [0, m)
Int mod_reduce(const Int& a, const Int& m);

// base^e for e >= 0
Int pow_int(const Int& base, unsigned long e);

// a^e mod m (e >= 0)
Int pow_mod(const Int& a, const Int& e, const Int& m);

// inverse of a mod m; throws std::invalid_argument if gcd(a,m) != 1
Int inv_mod(const Int& a, const Int& m);

// min(v_p(x), cap); by convention val_cap(0) = cap
long val_cap(Int x, const Int& p, long cap);

// Legendre symbol (a/p), p an odd prime
int legendre(const Int& a, const Int& p);

// x with x ≡ a1 mod m1, x ≡ a2 mod m2 for coprime m1, m2; result mod m1*m2
Int crt2(const Int& a1, const Int& m1, const Int& a2, const Int& m2);

// Deterministic primality for word-sized inputs, probabilistic (reliable)
// above; p >= 2.
bool is_prime(const Int& p);

// Ascending prime factorization (p_i, e_i).  Trial division plus a primality
// check on the cofactor; intended for desk-scale inputs.
std::vector<std::pair<Int, int>> factor(Int x);

// All divisors of x in ascending order (from factor()).
std::vector<Int> divisors(const Int& x);

// Multiplicative order of a in (Z/m)^x given the factorization of the group
// order (or any multiple of the element order).
Int element_order(const Int& a, const Int& m, const Int& order_multiple);

// Multiplicative order of a unit modulo p^n (p odd prime).
Int unit_order_mod_prime_power(const Int& a, const Int& p, int n);

// Primes <= bound, ascending.
std::vector<uint64_t> primes_up_to(uint64_t bound);

// lcm helpers for machine words (values must stay within uint64)
uint64_t lcm_u64(uint64_t a, uint64_t b);
uint64_t gcd_u64(uint64_t a, uint64_t b);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);

// Splittable deterministic RNG seeds (for reproducible randomized searches).
uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0);

std::string to_str(const Int& x);

}  // namespace gl2dc
