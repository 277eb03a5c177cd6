#include <doctest.h>

#include "cdlab/conic.hpp"
#include "cdlab/errors.hpp"
#include "cdlab/nt.hpp"
#include "cdlab/rng.hpp"

using namespace cdlab;
using arith::solve_conic;

TEST_CASE("conic trivial and small cases") {
    auto r = solve_conic(1, 5);
    REQUIRE(r.solution);
    CHECK(r.solution->x == 1);
    CHECK(r.solution->y == 1);
    CHECK(r.solution->z == 0);

    auto s = solve_conic(2, 7);
    REQUIRE(s.solution);
    auto [x, y, z] = *s.solution;
    CHECK(x * x == 2 * y * y + 7 * z * z);
    CHECK(x != 0);

    auto t = solve_conic(3, 5);
    CHECK(!t.solution);
    CHECK(!t.certificate.infinite);
    CHECK(t.certificate.p == 3);  // (3,5)_3 = -1
    CHECK(arith::hilbert_symbol(3, 5, t.certificate) == -1);
}

TEST_CASE("conic soundness sweep") {
    Rng rng(23);
    int soluble = 0, insoluble = 0;
    while (soluble < 200 || insoluble < 50) {
        std::int64_t a = (std::int64_t)(rng.next() % 160) - 80;
        std::int64_t b = (std::int64_t)(rng.next() % 160) - 80;
        if (a == 0 || b == 0) continue;
        a = nt::squarefree_kernel(a);
        b = nt::squarefree_kernel(b);
        auto r = solve_conic(a, b);
        if (r.solution) {
            auto [x, y, z] = *r.solution;
            CHECK(x * x == a * y * y + b * z * z);
            CHECK((x != 0 || y != 0 || z != 0));
            CHECK(nt::gcd64(nt::gcd64(x, y), z) == 1);
            ++soluble;
        } else {
            // certificate must be a genuinely failing place
            CHECK(arith::hilbert_symbol(a, b, r.certificate) == -1);
            ++insoluble;
        }
    }
}
