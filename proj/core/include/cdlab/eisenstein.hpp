#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace cdlab::arith {

// Z[w] with w a primitive cube root of unity, w^2 + w + 1 = 0.
// Elements are a + b*w; the ring is Euclidean for the norm a^2 - ab + b^2.
struct EisensteinInt {
    mpz_class a, b;

    EisensteinInt() : a(0), b(0) {}
    EisensteinInt(mpz_class x, mpz_class y) : a(std::move(x)), b(std::move(y)) {}
    EisensteinInt(long x, long y) : a(x), b(y) {}

    mpz_class norm() const { return a * a - a * b + b * b; }
    EisensteinInt conj() const { return {a - b, -b}; }  // w -> w^2
    bool is_zero() const { return a == 0 && b == 0; }

    friend EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) { return {x.a + y.a, x.b + y.b}; }
    friend EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) { return {x.a - y.a, x.b - y.b}; }
    friend EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
        // (a+bw)(c+dw) = ac - bd + (ad + bc - bd) w
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    friend bool operator==(const EisensteinInt& x, const EisensteinInt& y) { return x.a == y.a && x.b == y.b; }
};

inline EisensteinInt eis_omega() { return {0, 1}; }
inline EisensteinInt eis_lambda() { return {1, -1}; }  // 1 - w, the prime over 3

// Euclidean division: q with N(x - q*y) < N(y).
EisensteinInt eis_divmod(const EisensteinInt& x, const EisensteinInt& y, EisensteinInt& rem);
EisensteinInt eis_mod(const EisensteinInt& x, const EisensteinInt& m);
EisensteinInt eis_powmod(EisensteinInt base, const mpz_class& exp, const EisensteinInt& m);
EisensteinInt eis_gcd(EisensteinInt x, EisensteinInt y);

// Primality in Z[w]: unit-normalized test (norm prime, inert rational prime,
// or associate of 1-w).
bool eis_is_prime(const EisensteinInt& pi);

// Cubic residue symbol chi_pi(alpha) = alpha^((N(pi)-1)/3) mod pi, valued in
// {0, 1, w, w^2}, encoded as -1 for 0 and k in {0,1,2} for w^k.
// Requires pi prime with norm coprime to 3.
int cubic_residue_symbol(const EisensteinInt& alpha, const EisensteinInt& pi);

// Canonical primary prime above a rational prime p = 1 mod 3: the generator
// pi = a + bw with pi = 2 mod 3 (a = 2, b = 0 mod 3), b > 0.  Deterministic;
// every cube-class labelling in the library routes through this choice.
EisensteinInt canonical_prime_above(std::int64_t p);

// Residue of w modulo canonical_prime_above(p), as an element of F_p.
// Labels mu_3 inside F_p consistently with the Eisenstein side.
std::int64_t omega_residue(std::int64_t p);

// Cube-class index of a unit u mod p (p = 1 mod 3): k in {0,1,2} with
// u^((p-1)/3) = omega_residue(p)^k mod p.
int unit_cube_index(std::int64_t u, std::int64_t p);

}  // namespace cdlab::arith
