#pragma once

#include <cstdint>

namespace cdlab {

// splitmix64: the one stream every randomized experiment draws from, so a
// seed pins results across platforms and standard-library versions.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection-free is fine here; n is tiny in every caller
        return next() % n;
    }

    int trit() { return (int)below(3); }
    int sign() { return next() >> 63 ? -1 : 1; }
};

// Stateless deterministic sign for coefficient functions a_ij(d_i, d_j).
int coeff_sign(std::uint64_t seed, std::uint64_t tag, std::int64_t u, std::int64_t v);

}  // namespace cdlab
