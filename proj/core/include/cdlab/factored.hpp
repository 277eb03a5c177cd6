#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace cdlab::arith {

// A nonzero integer carried together with its full factorization.
// Primes are strictly increasing, exponents >= 1, and value() reconstructs
// the represented integer exactly.
struct FactoredInt {
    int sign = 1;  // +1 or -1
    std::vector<std::pair<mpz_class, int>> factors;

    mpz_class value() const;
    bool is_squarefree() const;
    bool is_square() const;
    int valuation(const mpz_class& p) const;
    FactoredInt squarefree_kernel() const;

    // Multiplies two factored integers (exact, re-merged).
    friend FactoredInt operator*(const FactoredInt& a, const FactoredInt& b);

    bool check_invariants() const;  // primality + ordering + nonzero
};

// Canonical factorization of n.  Throws std::invalid_argument on n == 0 and
// resource_limit_error (naming the cofactor) if a composite survives the
// rho budget.  |n| <= 2^192 is the documented input bound.
FactoredInt factor(const mpz_class& n);
FactoredInt factor(std::int64_t n);

}  // namespace cdlab::arith
