#pragma once

#include <cstdint>

#include "cdlab/factored.hpp"

namespace cdlab::arith {

// A rational place: a prime, or infinity.
struct Place {
    bool infinite = false;
    std::int64_t p = 0;  // prime when finite

    static Place prime(std::int64_t q) { return Place{false, q}; }
    static Place infinity() { return Place{true, 0}; }
};

// Hilbert symbol (a,b)_v in {-1,+1}: +1 iff x^2 = a y^2 + b z^2 has a
// nontrivial solution over Q_v.  Symmetric and bimultiplicative.
int hilbert_symbol(std::int64_t a, std::int64_t b, const Place& v);

// Same, with the valuations taken from prepared factorizations (used by the
// hot paths so a and b are not refactored per place).
int hilbert_symbol(const FactoredInt& a, const FactoredInt& b, const Place& v);

}  // namespace cdlab::arith
