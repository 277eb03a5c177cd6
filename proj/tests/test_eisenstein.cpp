#include <doctest.h>

#include "cdlab/eisenstein.hpp"
#include "cdlab/eisloc.hpp"
#include "cdlab/rng.hpp"

using namespace cdlab;
using arith::EisensteinInt;

TEST_CASE("eisenstein ring basics") {
    EisensteinInt w = arith::eis_omega();
    EisensteinInt w3 = w * w * w;
    CHECK(w3 == EisensteinInt{1, 0});
    CHECK(w.norm() == 1);
    CHECK(arith::eis_lambda().norm() == 3);

    Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
        EisensteinInt x{(long)(rng.next() % 200) - 100, (long)(rng.next() % 200) - 100};
        EisensteinInt y{(long)(rng.next() % 200) - 100, (long)(rng.next() % 200) - 100};
        CHECK(x * y == y * x);
        CHECK((x * y).norm() == x.norm() * y.norm());
        if (!y.is_zero()) {
            EisensteinInt r;
            EisensteinInt q = arith::eis_divmod(x, y, r);
            CHECK(x == q * y + r);
            CHECK(r.norm() < y.norm());
        }
    }
}

TEST_CASE("cubic residue symbol") {
    // chi_pi(1) = 1 for a handful of primes
    for (long p : {7L, 13L, 19L, 31L}) {
        EisensteinInt pi = arith::canonical_prime_above(p);
        CHECK(arith::cubic_residue_symbol({1, 0}, pi) == 0);
    }
    // cubes map to the identity
    Rng rng(37);
    for (int i = 0; i < 300; ++i) {
        long p = std::vector<long>{7, 13, 19, 31, 37, 43}[rng.next() % 6];
        EisensteinInt pi = arith::canonical_prime_above(p);
        EisensteinInt beta{(long)(rng.next() % 50) + 1, (long)(rng.next() % 50)};
        if (!arith::eis_mod(beta, pi).is_zero()) {
            CHECK(arith::cubic_residue_symbol(beta * beta * beta, pi) == 0);
        }
    }
    // chi_2(w) = w^((4-1)/3) = w with pi = 2 inert of norm 4
    CHECK(arith::cubic_residue_symbol(arith::eis_omega(), {2, 0}) == 1);
    // multiplicativity
    for (int i = 0; i < 300; ++i) {
        long p = std::vector<long>{7, 13, 19, 31}[rng.next() % 4];
        EisensteinInt pi = arith::canonical_prime_above(p);
        EisensteinInt x{(long)(rng.next() % 100) + 1, (long)(rng.next() % 100)};
        EisensteinInt y{(long)(rng.next() % 100) + 1, (long)(rng.next() % 100)};
        int sx = arith::cubic_residue_symbol(x, pi);
        int sy = arith::cubic_residue_symbol(y, pi);
        int sxy = arith::cubic_residue_symbol(x * y, pi);
        if (sx >= 0 && sy >= 0) CHECK(sxy == (sx + sy) % 3);
    }
    CHECK_THROWS_AS(arith::cubic_residue_symbol({1, 0}, {4, 0}), std::invalid_argument);
}

TEST_CASE("lambda-adic coordinates") {
    using arith::eis_lambda;
    // valuations
    CHECK(eisloc::val_lambda(eis_lambda()) == 1);
    CHECK(eisloc::val_lambda({3, 0}) == 2);
    CHECK(eisloc::val_lambda({9, 0}) == 4);
    CHECK(eisloc::val_lambda({1, 0}) == 0);
    CHECK(eisloc::val_lambda(arith::eis_omega()) == 0);

    // coordinates are a homomorphism to F_3^4 on units, and cubes vanish
    Rng rng(41);
    for (int i = 0; i < 400; ++i) {
        EisensteinInt x{(long)(rng.next() % 60) - 30, (long)(rng.next() % 60) - 30};
        if (x.is_zero() || eisloc::val_lambda(x) != 0) continue;
        auto cx = eisloc::coords_at_lambda(x);
        auto c3 = eisloc::coords_at_lambda(x * x * x);
        for (int k = 0; k < 4; ++k) CHECK(c3[k] == 0);
        EisensteinInt y{(long)(rng.next() % 60) - 30, (long)(rng.next() % 60) - 30};
        if (y.is_zero() || eisloc::val_lambda(y) != 0) continue;
        auto cy = eisloc::coords_at_lambda(y);
        auto cxy = eisloc::coords_at_lambda(x * y);
        for (int k = 0; k < 4; ++k) CHECK(cxy[k] == gf3::add(cx[k], cy[k]));
    }
}

TEST_CASE("coords at 2") {
    // units of F_4 cycle with w
    auto c1 = eisloc::coords_at_2({1, 0});
    CHECK(c1[0] == 0);
    CHECK(c1[1] == 0);
    auto cw = eisloc::coords_at_2(arith::eis_omega());
    CHECK(cw[1] == 1);
    auto c2 = eisloc::coords_at_2({2, 0});
    CHECK(c2[0] == 1);
    // cube kills the class
    Rng rng(43);
    for (int i = 0; i < 200; ++i) {
        EisensteinInt x{(long)(rng.next() % 40) - 20, (long)(rng.next() % 40) - 20};
        if (x.is_zero()) continue;
        auto c = eisloc::coords_at_2(x * x * x);
        CHECK(c[0] == 0);
        CHECK(c[1] == 0);
    }
}
