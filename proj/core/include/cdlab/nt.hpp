#pragma once

// Machine-word number theory: everything the engines run in inner loops.
// Values that can exceed 64 bits go through FactoredInt / mpz instead.

#include <cstdint>
#include <optional>
#include <vector>

namespace cdlab::nt {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

i64 gcd64(i64 a, i64 b);

// Deterministic Miller-Rabin for 64-bit inputs (fixed base set).
bool is_prime_u64(u64 n);

// Pollard rho with Brent cycle detection; deterministic seed sequence.
u64 pollard_rho(u64 n);

// Full factorization of n >= 1 into (prime, exponent), primes increasing.
std::vector<std::pair<u64, int>> factor_u64(u64 n);

// Jacobi symbol (a | n) for odd n >= 1.  Throws on even or nonpositive n.
int jacobi(i64 a, i64 n);

// Square root mod odd prime p (Tonelli-Shanks).  Returns nullopt for
// non-residues.  a is reduced mod p first.
std::optional<u64> sqrt_mod_p(u64 a, u64 p);

// Legendre symbol for odd prime p.
inline int legendre(i64 a, i64 p) { return jacobi(a, p); }

// v_p(n) for n != 0.
int valuation(i64 n, i64 p);

// Largest b with b*b <= n, exact.
u64 isqrt_u64(u64 n);

// Exact cube root of n if n is a perfect cube (n may be negative).
std::optional<i64> exact_cbrt(i64 n);

// n with every prime factor removed to multiplicity mod k (k-free kernel).
i64 kfree_kernel(i64 n, int k);

inline i64 squarefree_kernel(i64 n) { return kfree_kernel(n, 2); }

bool is_squarefree(i64 n);

// Hensel-lifted square root of a mod p^k for odd p with (a|p) = 1, p ∤ a.
u64 sqrt_mod_pk(u64 a, u64 p, int k, u64 pk);

// p^k as u64; caller keeps k small enough to fit.
u64 upow(u64 p, int k);

}  // namespace cdlab::nt
