#include "cdlab/factored.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cdlab/errors.hpp"
#include "cdlab/nt.hpp"

namespace cdlab::arith {

mpz_class FactoredInt::value() const {
    mpz_class v = sign;
    for (const auto& [p, e] : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), (unsigned long)e);
        v *= pe;
    }
    return v;
}

bool FactoredInt::is_squarefree() const {
    for (const auto& [p, e] : factors)
        if (e > 1) return false;
    return true;
}

bool FactoredInt::is_square() const {
    if (sign < 0) return false;
    for (const auto& [p, e] : factors)
        if (e % 2) return false;
    return true;
}

int FactoredInt::valuation(const mpz_class& p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

FactoredInt FactoredInt::squarefree_kernel() const {
    FactoredInt out;
    out.sign = sign;
    for (const auto& [p, e] : factors)
        if (e % 2) out.factors.push_back({p, 1});
    return out;
}

FactoredInt operator*(const FactoredInt& a, const FactoredInt& b) {
    std::map<mpz_class, int> m;
    for (const auto& [p, e] : a.factors) m[p] += e;
    for (const auto& [p, e] : b.factors) m[p] += e;
    FactoredInt out;
    out.sign = a.sign * b.sign;
    for (const auto& [p, e] : m)
        if (e) out.factors.push_back({p, e});
    return out;
}

bool FactoredInt::check_invariants() const {
    if (sign != 1 && sign != -1) return false;
    mpz_class prev = 1;
    for (const auto& [p, e] : factors) {
        if (e < 1) return false;
        if (p <= prev) return false;
        if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) return false;
        prev = p;
    }
    return true;
}

namespace {

// rho on mpz for cofactors beyond 64 bits; deterministic c-sequence.
mpz_class rho_mpz(const mpz_class& n, long budget_steps) {
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        long steps = 0;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x > y ? x - y : y - x;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            if (++steps > budget_steps)
                throw resource_limit_error("factor: rho budget exhausted on composite cofactor " + n.get_str());
        }
        if (d != n) return d;
        if (c > 64)
            throw resource_limit_error("factor: rho budget exhausted on composite cofactor " + n.get_str());
    }
}

void factor_into(const mpz_class& n, std::map<mpz_class, int>& out) {
    if (n == 1) return;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63) {
        for (auto [p, e] : nt::factor_u64(mpz_get_ui(n.get_mpz_t()))) out[mpz_class((unsigned long)p)] += e;
        return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out[n] += 1;
        return;
    }
    mpz_class d = rho_mpz(n, 4'000'000);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

FactoredInt factor(const mpz_class& n) {
    if (n == 0) throw std::invalid_argument("factor: zero input");
    FactoredInt out;
    out.sign = n < 0 ? -1 : 1;
    mpz_class m = abs(n);
    std::map<mpz_class, int> acc;
    // strip small primes first so the u64 path sees manageable cofactors
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            acc[mpz_class(p)] += 1;
        }
    }
    factor_into(m, acc);
    for (const auto& [p, e] : acc) out.factors.push_back({p, e});
    return out;
}

FactoredInt factor(std::int64_t n) { return factor(mpz_class((long)n)); }

}  // namespace cdlab::arith
