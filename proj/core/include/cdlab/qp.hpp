#pragma once

// Exact p-adic helpers for the local descent computations at p = 2 and 3.
// Values are exact integers (mpz); valuations are exact, square roots are
// computed modulo p^N for an explicitly chosen N.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "cdlab/gf3.hpp"

namespace cdlab::qp {

int val(const mpz_class& v, std::int64_t p);  // v != 0

// Is the nonzero integer t a square in Q_p?
bool is_square(const mpz_class& t, std::int64_t p);

// sqrt of t in Z_p to precision p^N (t a square, v_p(t) even).
mpz_class sqrt_mod(const mpz_class& t, std::int64_t p, int N);

// Cube-class coordinates of a nonzero integer at p:
//   p = 2: [v mod 3]
//   p = 3: [v mod 3, class of unit part mod 9]
// Coordinates of x/y are coords(x) - coords(y).
gf3::Vec cube_coords(const mpz_class& x, std::int64_t p);

int h1_dim(std::int64_t p);  // dim_F3 of Q_p^* / (Q_p^*)^3: 1 at 2, 2 at 3

}  // namespace cdlab::qp
