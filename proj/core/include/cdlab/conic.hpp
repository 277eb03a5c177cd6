#pragma once

#include <cstdint>
#include <optional>

#include "cdlab/hilbert.hpp"

namespace cdlab::arith {

struct ConicSolution {
    std::int64_t x = 0, y = 0, z = 0;  // primitive, x^2 = a y^2 + b z^2
};

struct ConicResult {
    std::optional<ConicSolution> solution;  // nullopt <=> insoluble
    Place certificate;                      // failing place when insoluble
};

// Solves x^2 = a y^2 + b z^2 in coprime integers for squarefree a, b.
// Insolubility is decided by Hilbert symbols first and the failing place is
// returned as certificate.  When soluble, a primitive solution inside the
// Holzer box is found by bounded search; prefer_nonzero_x additionally
// trades the solution for one with x != 0 (possible unless a = b = 1 cases
// degenerate, which the callers special-case away).
ConicResult solve_conic(std::int64_t a, std::int64_t b, bool prefer_nonzero_x = true);

}  // namespace cdlab::arith
