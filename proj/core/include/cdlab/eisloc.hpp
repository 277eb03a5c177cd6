#pragma once

// Local cube-class coordinates for Z[w] completions at the primes over 2
// (inert, residue field F_4) and over 3 (ramified, uniformizer lambda = 1-w).

#include "cdlab/eisenstein.hpp"
#include "cdlab/gf3.hpp"

namespace cdlab::eisloc {

// v_lambda of a nonzero element (exact).
int val_lambda(const arith::EisensteinInt& x);

// v at the inert prime (2).
int val_2(const arith::EisensteinInt& x);

// Coordinates of x in L_w^*/(L_w^*)^3:
//   at (2):     length 2: [v mod 3, F4 discrete log of the unit part]
//   at lambda:  length 4: [v_lambda mod 3, three unit-part coordinates]
gf3::Vec coords_at_2(const arith::EisensteinInt& x);
gf3::Vec coords_at_lambda(const arith::EisensteinInt& x);

// Unit-part cube test at lambda (independent re-verification path).
bool unit_is_cube_at_lambda(const arith::EisensteinInt& unit);

}  // namespace cdlab::eisloc
