#include "cdlab/localcube.hpp"

#include <stdexcept>

#include "cdlab/eisenstein.hpp"
#include "cdlab/nt.hpp"

namespace cdlab::arith {

int unit_class_dim(std::int64_t p) {
    if (p == 3) return 1;
    return p % 3 == 1 ? 1 : 0;
}

int unit_cube_index_3(std::int64_t u) {
    u = ((u % 9) + 9) % 9;
    switch (u) {
        case 1:
        case 8:
            return 0;
        case 2:
        case 7:
            return 1;
        case 4:
        case 5:
            return 2;
        default:
            throw std::invalid_argument("unit_cube_index_3: not a 3-adic unit");
    }
}

namespace {

// unit part of x mod p^k (enough of it to read the class), given factored x
mpz_class unit_part_mod(const FactoredInt& num, const FactoredInt& den, std::int64_t p, const mpz_class& mod) {
    mpz_class u = num.sign * den.sign;
    mpz_class P = p;
    for (const auto& [q, e] : num.factors) {
        if (q == P) continue;
        mpz_class qe, qm = q % mod;
        mpz_powm_ui(qe.get_mpz_t(), qm.get_mpz_t(), (unsigned long)e, mod.get_mpz_t());
        u = u * qe % mod;
    }
    for (const auto& [q, e] : den.factors) {
        if (q == P) continue;
        mpz_class qm = q % mod, qinv;
        if (mpz_invert(qinv.get_mpz_t(), qm.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw std::invalid_argument("unit_part_mod: denominator not a unit");
        mpz_class qe;
        mpz_powm_ui(qe.get_mpz_t(), qinv.get_mpz_t(), (unsigned long)e, mod.get_mpz_t());
        u = u * qe % mod;
    }
    return ((u % mod) + mod) % mod;
}

}  // namespace

PAdicCubeClass local_cube_class(const FactoredInt& num, const FactoredInt& den, std::int64_t p) {
    PAdicCubeClass c;
    c.p = p;
    mpz_class P = p;
    int v = num.valuation(P) - den.valuation(P);
    c.valuation_mod3 = ((v % 3) + 3) % 3;
    if (p == 3) {
        mpz_class u = unit_part_mod(num, den, p, mpz_class(9));
        c.unit_class = unit_cube_index_3(u.get_si());
    } else if (p % 3 == 1) {
        mpz_class u = unit_part_mod(num, den, p, mpz_class((long)p));
        c.unit_class = unit_cube_index(u.get_si(), p);
    } else {
        c.unit_class = 0;  // every unit is a cube when gcd(3, p-1) = 1
    }
    return c;
}

PAdicCubeClass local_cube_class(const FactoredInt& x, std::int64_t p) {
    FactoredInt one;
    return local_cube_class(x, one, p);
}

PAdicCubeClass local_cube_class(std::int64_t num, std::int64_t den, std::int64_t p) {
    if (num == 0 || den == 0) throw std::invalid_argument("local_cube_class: zero");
    std::int64_t g = nt::gcd64(num, den);
    return local_cube_class(factor(num / g), factor(den / g), p);
}

}  // namespace cdlab::arith
