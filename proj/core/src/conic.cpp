#include "cdlab/conic.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

#include "cdlab/errors.hpp"
#include "cdlab/nt.hpp"

namespace cdlab::arith {

namespace {

std::optional<ConicSolution> box_search(std::int64_t a, std::int64_t b, std::int64_t ymax, std::int64_t zmax,
                                        bool need_nonzero_x) {
    // x^2 = a y^2 + b z^2 with gcd(a,b) = g pulled out: x = g X,
    // g X^2 = a' y^2 + b' z^2.
    std::int64_t g = nt::gcd64(a, b);
    std::int64_t ap = a / g, bp = b / g;
    std::optional<ConicSolution> fallback;
    for (std::int64_t y = 0; y <= ymax; ++y) {
        for (std::int64_t z = 0; z <= zmax; ++z) {
            if (y == 0 && z == 0) continue;
            std::int64_t t = ap * y * y + bp * z * z;
            if (t % g != 0) continue;
            std::int64_t s = t / g;
            if (s < 0) continue;
            nt::u64 r = nt::isqrt_u64((nt::u64)s);
            if ((std::int64_t)(r * r) != s) continue;
            ConicSolution sol{g * (std::int64_t)r, y, z};
            std::int64_t d = nt::gcd64(nt::gcd64(sol.x, sol.y), sol.z);
            sol.x /= d, sol.y /= d, sol.z /= d;
            if (sol.x != 0 || !need_nonzero_x) return sol;
            if (!fallback) fallback = sol;
        }
    }
    return need_nonzero_x ? std::nullopt : fallback;
}

}  // namespace

ConicResult solve_conic(std::int64_t a, std::int64_t b, bool prefer_nonzero_x) {
    if (a == 0 || b == 0) throw std::invalid_argument("solve_conic: zero coefficient");
    if (!nt::is_squarefree(a) || !nt::is_squarefree(b))
        throw std::invalid_argument("solve_conic: coefficients must be squarefree");

    ConicResult out;
    if (a == 1) {
        out.solution = ConicSolution{1, 1, 0};
        return out;
    }
    if (b == 1) {
        out.solution = ConicSolution{1, 0, 1};
        return out;
    }

    // Hilbert pre-check decides solubility (Hasse-Minkowski for this form).
    std::set<std::int64_t> ps{2};
    for (auto [p, e] : nt::factor_u64((nt::u64)std::llabs(a))) ps.insert((std::int64_t)p);
    for (auto [p, e] : nt::factor_u64((nt::u64)std::llabs(b))) ps.insert((std::int64_t)p);
    if (hilbert_symbol(a, b, Place::infinity()) == -1) {
        out.certificate = Place::infinity();
        return out;
    }
    for (std::int64_t p : ps) {
        if (hilbert_symbol(a, b, Place::prime(p)) == -1) {
            out.certificate = Place::prime(p);
            return out;
        }
    }

    // Holzer: a solution lives in |y| <= sqrt|b g|-ish boxes; widen a few
    // times so the x != 0 preference can always be satisfied.
    std::int64_t g = nt::gcd64(a, b);
    double ymax0 = std::sqrt((double)std::llabs(b / g * g)) * std::sqrt((double)g);
    double zmax0 = std::sqrt((double)std::llabs(a / g * g)) * std::sqrt((double)g);
    for (int widen = 1; widen <= 64; widen *= 2) {
        std::int64_t ymax = (std::int64_t)(ymax0 + 2) * widen;
        std::int64_t zmax = (std::int64_t)(zmax0 + 2) * widen;
        auto sol = box_search(a, b, ymax, zmax, prefer_nonzero_x);
        if (!sol && widen >= 4) sol = box_search(a, b, ymax, zmax, false);
        if (sol) {
            out.solution = sol;
            return out;
        }
    }
    throw internal_error("solve_conic: Holzer-box search failed despite passing Hilbert symbols");
}

}  // namespace cdlab::arith
