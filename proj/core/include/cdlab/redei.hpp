#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdlab/conic.hpp"

namespace cdlab::redei {

using std::int64_t;

enum class SymbolStatus { undefined, zero, nonzero };

struct RedeiTriple {
    int64_t a, b, c;  // squarefree nonzero
};

struct RedeiResult {
    bool defined = false;
    int value = 0;  // in {-1, 0, +1}, meaningful only when defined

    static RedeiResult undefined() { return {false, 0}; }
    static RedeiResult of(int v) { return {true, v}; }
    bool operator==(const RedeiResult&) const = default;
};

// delta = dx + dy*sqrt(a) generating the quartic extension used to evaluate
// the symbol attached to the pair (a, b), together with the conic solution
// it came from and the normalization steps that were applied at 2.
struct NormalizedAlpha {
    int64_t a = 0, b = 0;
    arith::ConicSolution sol;
    mpz_class dx, dy;
    mpz_class norm_sq;  // N(delta) = b * norm_sq^2 bookkeeping value (z part)
    std::vector<std::string> audit;

    mpz_class norm() const { return dx * dx - mpz_class(a) * dy * dy; }
};

// Definedness / zero / nonzero trichotomy:
//   undefined  iff some pairwise Hilbert symbol is -1 somewhere, or some
//              rational place ramifies in all three quadratic fields;
//   zero       iff defined but no argument is 1 mod 8;
//   nonzero    otherwise.
SymbolStatus symbol_status(const RedeiTriple& t);

// Cached, deterministic choice of delta for the pair (a, b).  Requires the
// conic x^2 = a y^2 + b z^2 to be soluble and a != 1.
NormalizedAlpha normalized_alpha(int64_t a, int64_t b);

// The symbol [a,b,c] computed as a product of quadratic residue symbols of
// delta at the places dividing the (1 mod 8)-normalized third slot.
RedeiResult redei_symbol(const RedeiTriple& t);

// Slow reference evaluation: builds a defining polynomial of the octic field
// attached to (a, b) and reads gamma(Frob p) off factorization degree
// patterns mod p.  Domain: nonzero status, c with at most 4 prime factors,
// gcd(c, 2ab) = 1 (other inputs raise unsupported_error).
RedeiResult frobenius_oracle(const RedeiTriple& t);

enum class GroupShape { dihedral8, cyclic4 };

// Shape of the Galois closure used by the oracle, with a sampling check
// that factorization patterns mod many primes are consistent with it.
GroupShape oracle_group_shape(int64_t a, int64_t b);

// Fixture records (one JSON object per line: {"a":..,"b":..,"c":..,"value":..}).
struct FixtureRecord {
    int64_t a, b, c;
    int value;
};
void write_fixtures(const std::string& path, const std::vector<FixtureRecord>& recs);
std::vector<FixtureRecord> read_fixtures(const std::string& path);

// The audited oracle corpus: triples spanning the oracle's domain, each
// evaluated by frobenius_oracle.
std::vector<FixtureRecord> generate_fixture_corpus();

}  // namespace cdlab::redei
