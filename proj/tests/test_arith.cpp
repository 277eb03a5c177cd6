#include <doctest.h>
#include <gmpxx.h>

#include "cdlab/errors.hpp"
#include "cdlab/factored.hpp"
#include "cdlab/hilbert.hpp"
#include "cdlab/localcube.hpp"
#include "cdlab/nt.hpp"
#include "cdlab/rng.hpp"

using namespace cdlab;
using arith::FactoredInt;
using arith::Place;

TEST_CASE("factor canonical forms") {
    auto f = arith::factor(12);
    CHECK(f.sign == 1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == 2);
    CHECK(f.factors[0].second == 2);
    CHECK(f.factors[1].first == 3);
    CHECK(f.factors[1].second == 1);

    auto u = arith::factor(-1);
    CHECK(u.sign == -1);
    CHECK(u.factors.empty());
    CHECK(u.value() == -1);

    // trial-division oracle for a small semiprime-ish composite
    auto g = arith::factor(1001);
    mpz_class v = 1;
    for (auto [p, e] : g.factors)
        for (int i = 0; i < e; ++i) v *= p;
    CHECK(v == 1001);
    REQUIRE(g.factors.size() == 3);
    CHECK(g.factors[0].first == 7);
    CHECK(g.factors[1].first == 11);
    CHECK(g.factors[2].first == 13);

    CHECK_THROWS_AS(arith::factor(0), std::invalid_argument);
    CHECK(f.check_invariants());

    // value round-trip on a batch of random 64-bit integers
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        std::int64_t n = (std::int64_t)(rng.next() % 1000000000ull) + 2;
        auto fi = arith::factor(n);
        CHECK(fi.value() == n);
        CHECK(fi.check_invariants());
    }
}

TEST_CASE("factor handles wide inputs") {
    mpz_class big("340282366920938463463374607431768211507");  // 2^128 + 51, whatever it factors as
    auto f = arith::factor(big);
    CHECK(f.value() == big);
    CHECK(f.check_invariants());
}

TEST_CASE("jacobi identities and multiplicativity") {
    CHECK(nt::jacobi(1, 15) == 1);
    CHECK(nt::jacobi(17, 1) == 1);
    CHECK(nt::jacobi(2, 15) == 1);  // (2|3)(2|5) = (-1)(-1)
    CHECK_THROWS_AS(nt::jacobi(3, 10), std::invalid_argument);

    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        std::int64_t a1 = (std::int64_t)(rng.next() % 4001) - 2000;
        std::int64_t a2 = (std::int64_t)(rng.next() % 4001) - 2000;
        std::int64_t n = 2 * (std::int64_t)(rng.next() % 500) + 1;
        CHECK(nt::jacobi(a1 * a2, n) == nt::jacobi(a1, n) * nt::jacobi(a2, n));
    }
    // gmp as an independent oracle
    for (int i = 0; i < 500; ++i) {
        std::int64_t a = (std::int64_t)(rng.next() % 20001) - 10000;
        std::int64_t n = 2 * (std::int64_t)(rng.next() % 2000) + 1;
        mpz_class am = (long)a, nm = (long)n;
        CHECK(nt::jacobi(a, n) == mpz_jacobi(am.get_mpz_t(), nm.get_mpz_t()));
    }
}

namespace {

// brute-force local solubility of x^2 = a y^2 + b z^2 over Q_2: a primitive
// Z_2 solution has a unit coordinate, so normalize it to 1 and search the
// other two mod 2^K; the slack beyond v_2(4ab) makes residue solutions lift
bool soluble_2adic_bruteforce(std::int64_t a, std::int64_t b) {
    const int K = 10;
    const std::int64_t M = 1ll << K;
    auto hit = [&](std::int64_t v) { return ((v % M) + M) % M == 0; };
    for (std::int64_t u = 0; u < M; ++u)
        for (std::int64_t w = 0; w < M; ++w) {
            if (hit(u * u - a - b * w * w)) return true;       // y = 1
            if (hit(u * u - a * w * w - b)) return true;       // z = 1
            if (hit(1 - a * u * u - b * w * w)) return true;   // x = 1
        }
    return false;
}

}  // namespace

TEST_CASE("hilbert symbol basics") {
    CHECK(arith::hilbert_symbol(1, 77, Place::prime(7)) == 1);
    CHECK(arith::hilbert_symbol(-1, -1, Place::infinity()) == -1);
    CHECK(arith::hilbert_symbol(-1, -1, Place::prime(2)) == -1);
    CHECK(arith::hilbert_symbol(2, 7, Place::prime(7)) == 1);
    // derived check: exhaustive 2-adic search agrees on small pairs
    for (std::int64_t a : {-1, 2, 3, 5}) {
        for (std::int64_t b : {-1, 2, 7}) {
            bool sym = arith::hilbert_symbol(a, b, Place::prime(2)) == 1;
            CHECK(sym == soluble_2adic_bruteforce(a, b));
        }
    }
}

TEST_CASE("hilbert product formula") {
    Rng rng(13);
    int tested = 0;
    while (tested < 1000) {
        std::int64_t a = (std::int64_t)(rng.next() % 400) - 200;
        std::int64_t b = (std::int64_t)(rng.next() % 400) - 200;
        if (a == 0 || b == 0) continue;
        a = nt::squarefree_kernel(a);
        b = nt::squarefree_kernel(b);
        int prod = arith::hilbert_symbol(a, b, Place::infinity());
        prod *= arith::hilbert_symbol(a, b, Place::prime(2));
        for (std::int64_t p = 3; p <= 200; p += 2) {
            if (!nt::is_prime_u64((nt::u64)p)) continue;
            if (a % p && b % p) continue;
            prod *= arith::hilbert_symbol(a, b, Place::prime(p));
        }
        CHECK(prod == 1);
        ++tested;
    }
}

TEST_CASE("local cube classes") {
    // a perfect cube is the identity at every p
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
        auto c = arith::local_cube_class(216, 1, p);
        CHECK(c.is_identity());
    }
    // p = 2 mod 3, unit input: trivial class
    auto c7 = arith::local_cube_class(3, 1, 5);
    CHECK(c7.valuation_mod3 == 0);
    CHECK(c7.unit_class == 0);
    // cubes mod 7 are {1,-1}; 2 is not one
    auto c = arith::local_cube_class(2, 1, 7);
    CHECK(c.valuation_mod3 == 0);
    CHECK(c.unit_class != 0);

    // cube-invariance: class(x y^3) = class(x)
    Rng rng(17);
    for (int i = 0; i < 300; ++i) {
        std::int64_t x = (std::int64_t)(rng.next() % 5000) + 2;
        std::int64_t y = (std::int64_t)(rng.next() % 50) + 2;
        std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7, 13, 31}[rng.next() % 6];
        auto c1 = arith::local_cube_class(x, 1, p);
        auto c2 = arith::local_cube_class(x * y * y * y, 1, p);
        CHECK(c1 == c2);
    }
}
