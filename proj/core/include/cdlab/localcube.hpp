#pragma once

#include <cstdint>

#include "cdlab/factored.hpp"

namespace cdlab::arith {

// Concrete model of Q_p^* / (Q_p^*)^3 at a prime p:
//   valuation_mod3        v_p(x) mod 3
//   unit_class            index of the unit part in the unit cube-class group:
//                         always 0 for p = 2 mod 3 (trivial group); for
//                         p = 1 mod 3 the exponent k with u^((p-1)/3) = w^k
//                         against the canonical labelling of mu_3 in F_p;
//                         for p = 3 the class of the unit part mod 9
//                         (u = +-1 -> 0, +-2 -> 1, +-4 -> 2).
struct PAdicCubeClass {
    std::int64_t p = 0;
    int valuation_mod3 = 0;
    int unit_class = 0;

    bool is_identity() const { return valuation_mod3 == 0 && unit_class == 0; }
    bool operator==(const PAdicCubeClass&) const = default;
};

// Unit cube-class group dimension at p (0, or 1 when p = 3 or p = 1 mod 3).
int unit_class_dim(std::int64_t p);

// Cube-class index of a 3-adic unit via its residue mod 9.
int unit_cube_index_3(std::int64_t u_mod9);

// Local cube class of the nonzero rational num/den at p.  The rational is
// reduced before any valuation is taken.
PAdicCubeClass local_cube_class(const FactoredInt& num, const FactoredInt& den, std::int64_t p);
PAdicCubeClass local_cube_class(const FactoredInt& x, std::int64_t p);
PAdicCubeClass local_cube_class(std::int64_t num, std::int64_t den, std::int64_t p);

}  // namespace cdlab::arith
