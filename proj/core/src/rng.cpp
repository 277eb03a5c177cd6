#include "cdlab/rng.hpp"

namespace cdlab {

int coeff_sign(std::uint64_t seed, std::uint64_t tag, std::int64_t u, std::int64_t v) {
    Rng r(seed ^ (tag * 0x9e3779b97f4a7c15ull) ^ ((std::uint64_t)u * 0xc2b2ae3d27d4eb4full) ^
          ((std::uint64_t)v * 0x165667b19e3779f9ull));
    r.next();
    return r.sign();
}

}  // namespace cdlab
