#include "cdlab/eisenstein.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "cdlab/errors.hpp"
#include "cdlab/nt.hpp"

namespace cdlab::arith {

EisensteinInt eis_divmod(const EisensteinInt& x, const EisensteinInt& y, EisensteinInt& rem) {
    if (y.is_zero()) throw std::invalid_argument("eis_divmod: division by zero");
    // x/y = x * conj(y) / N(y); round both coordinates to nearest.
    EisensteinInt num = x * y.conj();
    mpz_class n = y.norm();
    auto round_div = [&](const mpz_class& t) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        if (2 * r >= n) q += 1;
        return q;
    };
    EisensteinInt q{round_div(num.a), round_div(num.b)};
    rem = x - q * y;
    return q;
}

EisensteinInt eis_mod(const EisensteinInt& x, const EisensteinInt& m) {
    EisensteinInt r;
    eis_divmod(x, m, r);
    return r;
}

EisensteinInt eis_powmod(EisensteinInt base, const mpz_class& exp, const EisensteinInt& m) {
    EisensteinInt r{1, 0};
    base = eis_mod(base, m);
    mpz_class e = exp;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = eis_mod(r * base, m);
        base = eis_mod(base * base, m);
        e >>= 1;
    }
    return r;
}

EisensteinInt eis_gcd(EisensteinInt x, EisensteinInt y) {
    while (!y.is_zero()) {
        EisensteinInt r;
        eis_divmod(x, y, r);
        x = y;
        y = r;
    }
    return x;
}

bool eis_is_prime(const EisensteinInt& pi) {
    mpz_class n = pi.norm();
    if (n <= 1) return false;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) return true;  // norm prime: split or ramified
    // inert case: associate of a rational prime q = 2 mod 3, norm q^2
    mpz_class r;
    mpz_sqrtrem(n.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    if (r != 0) return false;
    // n now holds sqrt of the original norm
    if (!mpz_probab_prime_p(n.get_mpz_t(), 40)) return false;
    return mpz_fdiv_ui(n.get_mpz_t(), 3) == 2;
}

int cubic_residue_symbol(const EisensteinInt& alpha, const EisensteinInt& pi) {
    if (!eis_is_prime(pi)) throw std::invalid_argument("cubic_residue_symbol: pi not prime");
    mpz_class n = pi.norm();
    if (mpz_divisible_ui_p(n.get_mpz_t(), 3))
        throw std::invalid_argument("cubic_residue_symbol: norm divisible by 3");
    EisensteinInt r = eis_powmod(alpha, (n - 1) / 3, pi);
    if (r.is_zero()) return -1;
    // identify r with 1, w, or w^2 modulo pi
    const EisensteinInt w = eis_omega();
    EisensteinInt t{1, 0};
    for (int k = 0; k < 3; ++k) {
        if (eis_mod(r - t, pi).is_zero()) return k;
        t = t * w;
    }
    throw internal_error("cubic_residue_symbol: value not a cube root of unity");
}

namespace {
std::mutex g_prime_mu;
std::map<std::int64_t, EisensteinInt> g_prime_cache;
}  // namespace

EisensteinInt canonical_prime_above(std::int64_t p) {
    if (p % 3 != 1) throw std::invalid_argument("canonical_prime_above: p must be 1 mod 3");
    {
        std::lock_guard<std::mutex> lk(g_prime_mu);
        auto it = g_prime_cache.find(p);
        if (it != g_prime_cache.end()) return it->second;
    }
    // Solve a^2 - ab + b^2 = p by brute force over b (p is desk-scale),
    // then normalize by units to the primary associate with b = 0 mod 3,
    // a = 2 mod 3, and positive b among the two conjugate options.
    EisensteinInt found{0, 0};
    for (std::int64_t b = 1; b * b <= 2 * p && found.is_zero(); ++b) {
        // a^2 - ab + (b^2 - p) = 0 -> a = (b +- sqrt(4p - 3b^2))/2
        std::int64_t disc = 4 * p - 3 * b * b;
        if (disc < 0) break;
        std::int64_t s = (std::int64_t)nt::isqrt_u64((nt::u64)disc);
        if (s * s != disc) continue;
        if ((b + s) % 2 == 0) found = EisensteinInt{mpz_class((long)((b + s) / 2)), mpz_class((long)b)};
    }
    if (found.is_zero()) throw internal_error("canonical_prime_above: no representation found");

    // Collect the 12 associates of found and its conjugate, keep the primary
    // ones (a = 2, b = 0 mod 3), and pick the one with b > 0; the primary
    // associates of pi and pi-bar have opposite-sign b, so this is unique.
    const EisensteinInt w = eis_omega();
    EisensteinInt best{0, 0};
    std::vector<EisensteinInt> assoc;
    for (const EisensteinInt& base : {found, found.conj()}) {
        EisensteinInt u = base;
        for (int k = 0; k < 3; ++k) {
            assoc.push_back(u);
            assoc.push_back(EisensteinInt{-u.a, -u.b});
            u = u * w;
        }
    }
    for (const auto& cand : assoc) {
        mpz_class am3 = ((cand.a % 3) + 3) % 3, bm3 = ((cand.b % 3) + 3) % 3;
        if (am3 == 2 && bm3 == 0 && cand.b > 0) {
            best = cand;
            break;
        }
    }
    if (best.is_zero()) throw internal_error("canonical_prime_above: no primary associate");
    {
        std::lock_guard<std::mutex> lk(g_prime_mu);
        g_prime_cache[p] = best;
    }
    return best;
}

std::int64_t omega_residue(std::int64_t p) {
    EisensteinInt pi = canonical_prime_above(p);
    // w = -a/b * ... : solve a + b*wbar = 0 mod p, i.e. wbar = -a * b^{-1}.
    std::int64_t a = mpz_class(pi.a % p).get_si();
    std::int64_t b = mpz_class(pi.b % p).get_si();
    a = ((a % p) + p) % p;
    b = ((b % p) + p) % p;
    nt::u64 binv = nt::powmod((nt::u64)b, (nt::u64)(p - 2), (nt::u64)p);
    std::int64_t w = (std::int64_t)nt::mulmod((nt::u64)((p - a) % p), binv, (nt::u64)p);
    return w;
}

int unit_cube_index(std::int64_t u, std::int64_t p) {
    u = ((u % p) + p) % p;
    if (u == 0) throw std::invalid_argument("unit_cube_index: not a unit");
    nt::u64 v = nt::powmod((nt::u64)u, (nt::u64)((p - 1) / 3), (nt::u64)p);
    if (v == 1) return 0;
    nt::u64 w = (nt::u64)omega_residue(p);
    if (v == w) return 1;
    if (v == nt::mulmod(w, w, (nt::u64)p)) return 2;
    throw internal_error("unit_cube_index: nontrivial cube root mismatch");
}

}  // namespace cdlab::arith
