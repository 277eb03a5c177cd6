#include "cdlab/qp.hpp"

#include <stdexcept>

#include "cdlab/errors.hpp"
#include "cdlab/localcube.hpp"

namespace cdlab::qp {

int val(const mpz_class& v, std::int64_t p) {
    if (v == 0) throw std::invalid_argument("qp::val of zero");
    mpz_class t = v;
    int n = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), (unsigned long)p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), (unsigned long)p);
        ++n;
    }
    return n;
}

namespace {

mpz_class unit_part(const mpz_class& t, std::int64_t p) {
    mpz_class u = t;
    while (mpz_divisible_ui_p(u.get_mpz_t(), (unsigned long)p))
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), (unsigned long)p);
    return u;
}

}  // namespace

bool is_square(const mpz_class& t, std::int64_t p) {
    if (t == 0) throw std::invalid_argument("qp::is_square of zero");
    if (val(t, p) % 2) return false;
    mpz_class u = unit_part(t, p);
    if (p == 2) {
        mpz_class r = ((u % 8) + 8) % 8;
        return r == 1;
    }
    mpz_class pm = (long)p;
    return mpz_legendre(u.get_mpz_t(), pm.get_mpz_t()) == 1;
}

mpz_class sqrt_mod(const mpz_class& t, std::int64_t p, int N) {
    int v = val(t, p);
    if (v % 2 || !is_square(t, p)) throw internal_error("qp::sqrt_mod: not a square");
    mpz_class u = unit_part(t, p);
    mpz_class mod;
    mpz_class P = (long)p;
    mpz_pow_ui(mod.get_mpz_t(), P.get_mpz_t(), N);
    mpz_class um = ((u % mod) + mod) % mod;
    mpz_class r;
    if (p == 2) {
        // bit-by-bit lift from r = 1 (u = 1 mod 8)
        r = 1;
        for (int k = 3; k < N; ++k) {
            mpz_class step = mpz_class(1) << (k + 1);
            mpz_class cur = ((r * r - um) % step + step) % step;
            if (cur != 0) r += mpz_class(1) << (k - 1);
        }
    } else {
        // Hensel from sqrt mod p
        mpz_class pm = (long)p;
        mpz_class u0 = um % pm;
        mpz_class r0;
        if (mpz_legendre(u0.get_mpz_t(), pm.get_mpz_t()) != 1 && u0 != 0)
            throw internal_error("qp::sqrt_mod: unit not a residue");
        // Tonelli on machine words (p is 3 in practice, small always)
        unsigned long rp = 0;
        unsigned long pp = (unsigned long)p;
        unsigned long uu = mpz_get_ui(u0.get_mpz_t());
        for (unsigned long w = 1; w < pp; ++w)
            if (w * w % pp == uu) {
                rp = w;
                break;
            }
        if (!rp) throw internal_error("qp::sqrt_mod: no root mod p");
        r = (unsigned long)rp;
        mpz_class cur = pm;
        while (cur < mod) {
            cur = cur * cur;
            if (cur > mod) cur = mod;
            mpz_class f = ((r * r - um) % cur + cur) % cur;
            mpz_class den = (2 * r) % cur, dinv;
            mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), cur.get_mpz_t());
            r = ((r - f * dinv) % cur + cur) % cur;
        }
    }
    // reattach p^{v/2}
    mpz_class half;
    mpz_pow_ui(half.get_mpz_t(), P.get_mpz_t(), v / 2);
    return (r * half) % (mod * half);
}

gf3::Vec cube_coords(const mpz_class& x, std::int64_t p) {
    if (x == 0) throw std::invalid_argument("qp::cube_coords of zero");
    int v = val(x, p);
    mpz_class u = unit_part(x, p);
    if (p == 2) return {(std::uint8_t)(((v % 3) + 3) % 3)};
    if (p == 3) {
        long um = mpz_class(((u % 9) + 9) % 9).get_si();
        return {(std::uint8_t)(((v % 3) + 3) % 3), (std::uint8_t)arith::unit_cube_index_3(um)};
    }
    throw std::invalid_argument("qp::cube_coords: only p = 2, 3 supported here");
}

int h1_dim(std::int64_t p) { return p == 3 ? 2 : 1; }

}  // namespace cdlab::qp
