// Reference evaluation of the triple symbol through explicit defining
// polynomials: gamma(Frob p) is read off the factorization degree pattern of
// a defining polynomial of Q(sqrt a, sqrt b, sqrt delta) modulo p.

#include <algorithm>
#include <vector>

#include "cdlab/errors.hpp"
#include "cdlab/nt.hpp"
#include "cdlab/redei.hpp"

namespace cdlab::redei {

using nt::i64;
using nt::u64;

namespace {

// ----- dense polynomials mod p, coefficients u64, small degree -------------

struct PolyP {
    std::vector<u64> c;  // c[i] * x^i
    u64 p;

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int deg() const { return (int)c.size() - 1; }
};

PolyP poly_mul(const PolyP& a, const PolyP& b) {
    PolyP r{std::vector<u64>(a.c.size() + b.c.size() - 1, 0), a.p};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = (r.c[i + j] + nt::mulmod(a.c[i], b.c[j], a.p)) % a.p;
    }
    r.trim();
    return r;
}

PolyP poly_mod(PolyP a, const PolyP& m) {
    u64 p = a.p;
    a.trim();
    while (a.deg() >= m.deg() && a.deg() >= 0) {
        u64 lead = a.c.back();
        u64 inv = nt::powmod(m.c.back(), p - 2, p);
        u64 f = nt::mulmod(lead, inv, p);
        int shift = a.deg() - m.deg();
        for (size_t i = 0; i < m.c.size(); ++i) {
            u64 sub = nt::mulmod(f, m.c[i], p);
            a.c[i + shift] = (a.c[i + shift] + p - sub) % p;
        }
        a.trim();
    }
    return a;
}

PolyP poly_powmod_x(u64 e, const PolyP& m) {
    // x^e mod m
    PolyP result{{1}, m.p};
    PolyP base{{0, 1}, m.p};
    base = poly_mod(base, m);
    while (e) {
        if (e & 1) result = poly_mod(poly_mul(result, base), m);
        base = poly_mod(poly_mul(base, base), m);
        e >>= 1;
    }
    return result;
}

PolyP poly_powmod(PolyP base, u64 e, const PolyP& m) {
    PolyP result{{1}, m.p};
    base = poly_mod(base, m);
    while (e) {
        if (e & 1) result = poly_mod(poly_mul(result, base), m);
        base = poly_mod(poly_mul(base, base), m);
        e >>= 1;
    }
    return result;
}

PolyP poly_gcd(PolyP a, PolyP b) {
    a.trim();
    b.trim();
    while (!(b.c.empty())) {
        PolyP r = poly_mod(a, b);
        a = b;
        b = r;
    }
    // normalize monic
    if (!a.c.empty()) {
        u64 inv = nt::powmod(a.c.back(), a.p - 2, a.p);
        for (auto& x : a.c) x = nt::mulmod(x, inv, a.p);
    }
    return a;
}

PolyP poly_deriv(const PolyP& a) {
    PolyP r{{}, a.p};
    for (size_t i = 1; i < a.c.size(); ++i) r.c.push_back(nt::mulmod(a.c[i], i % a.p, a.p));
    r.trim();
    return r;
}

PolyP reduce_mpz_poly(const std::vector<mpz_class>& f, u64 p) {
    PolyP r{{}, p};
    for (const auto& co : f) {
        mpz_class m = ((co % (long)p) + (long)p) % (long)p;
        r.c.push_back(m.get_ui());
    }
    r.trim();
    return r;
}

// ----- defining polynomials -------------------------------------------------

// pair (u, v) meaning u + v*sqrt(a)
struct ZPair {
    mpz_class u, v;
};

ZPair zp_mul(const ZPair& x, const ZPair& y, i64 a) { return {x.u * y.u + a * x.v * y.v, x.u * y.v + x.v * y.u}; }
ZPair zp_sub(const ZPair& x, const ZPair& y) { return {x.u - y.u, x.v - y.v}; }
ZPair zp_add(const ZPair& x, const ZPair& y) { return {x.u + y.u, x.v + y.v}; }

// quartic T^4 - 2 dx T^2 + N(delta): min poly of sqrt(delta) over Q
std::vector<mpz_class> quartic_poly(const NormalizedAlpha& na) {
    return {na.norm(), 0, -2 * na.dx, 0, 1};
}

// octic in T: product over conjugates of (T^2)^2 - 2(delta + t^2 b)(T^2) + (delta - t^2 b)^2
std::vector<mpz_class> octic_poly(const NormalizedAlpha& na, i64 t) {
    i64 a = na.a;
    mpz_class t2b = mpz_class((long)t) * t * na.b;
    ZPair delta{na.dx, na.dy};
    ZPair c1{-2 * (delta.u + t2b), -2 * delta.v};
    ZPair dm{delta.u - t2b, delta.v};
    ZPair c0 = zp_mul(dm, dm, a);
    // h(S) = (S^2 + c1 S + c0)(S^2 + c1b S + c0b), conjugate pair product
    ZPair c1b{c1.u, -c1.v}, c0b{c0.u, -c0.v};
    // coefficients of h: S^4 + (c1+c1b) S^3 + (c0 + c0b + c1 c1b) S^2 + (c1 c0b + c1b c0) S + c0 c0b
    ZPair s3 = zp_add(c1, c1b);
    ZPair s2 = zp_add(zp_add(c0, c0b), zp_mul(c1, c1b, a));
    ZPair s1 = zp_add(zp_mul(c1, c0b, a), zp_mul(c1b, c0, a));
    ZPair s0 = zp_mul(c0, c0b, a);
    for (const ZPair* z : {&s3, &s2, &s1, &s0})
        if (z->v != 0) throw internal_error("octic_poly: sqrt(a) part did not cancel");
    // h(S) -> f(T) with S = T^2
    std::vector<mpz_class> f(9, mpz_class(0));
    f[8] = 1;
    f[6] = s3.u;
    f[4] = s2.u;
    f[2] = s1.u;
    f[0] = s0.u;
    return f;
}

NormalizedAlpha shift_delta(const NormalizedAlpha& na, i64 k) {
    // multiply delta by (k + sqrt a)^2: same square class, same field
    NormalizedAlpha out = na;
    ZPair m{mpz_class((long)k), 1};
    ZPair m2 = zp_mul(m, m, na.a);
    ZPair d = zp_mul({na.dx, na.dy}, m2, na.a);
    out.dx = d.u;
    out.dy = d.v;
    mpz_class nk = mpz_class((long)k) * k - na.a;  // N(k + sqrt a)
    out.norm_sq = na.norm_sq * nk;
    return out;
}

// gamma from the degree pattern of f mod p; degree must be 4 or 8 and p must
// keep f squarefree (returns nullopt otherwise so the caller can shift).
std::optional<int> gamma_from_pattern(const std::vector<mpz_class>& f, i64 p) {
    PolyP fp = reduce_mpz_poly(f, (u64)p);
    if (fp.deg() != (int)f.size() - 1) return std::nullopt;  // leading coeff vanished (cannot happen: monic)
    PolyP d = poly_deriv(fp);
    PolyP g = poly_gcd(fp, d);
    if (g.deg() > 0) return std::nullopt;  // not squarefree mod p: shift generator

    // number of linear factors
    PolyP xp = poly_powmod_x((u64)p, fp);
    PolyP xminus = xp;
    // xp - x
    if (xminus.c.size() < 2) xminus.c.resize(2, 0);
    xminus.c[1] = (xminus.c[1] + (u64)p - 1) % (u64)p;
    xminus.trim();
    PolyP lin = poly_gcd(fp, xminus);
    int nlin = std::max(lin.deg(), 0);
    int degf = fp.deg();
    if (nlin == degf) return 1;  // split completely
    if (nlin != 0) throw internal_error("oracle: mixed degree pattern (Frobenius not in the expected subgroup)");

    // all factors of degree exactly 2 <=> x^{p^2} = x mod f
    PolyP xp2 = poly_powmod(xp, (u64)p, fp);
    if (xp2.c.size() < 2) xp2.c.resize(2, 0);
    xp2.c[1] = (xp2.c[1] + (u64)p - 1) % (u64)p;
    xp2.trim();
    if (!xp2.c.empty()) throw internal_error("oracle: degree pattern not in {all 1, all 2}");
    return -1;
}

int sign_of_delta(const NormalizedAlpha& na) {
    if (na.a < 0) throw internal_error("oracle: sign of delta in imaginary field");
    if (na.dy == 0) return na.dx > 0 ? 1 : -1;
    mpz_class l = na.dx, r = -na.dy;
    if (l >= 0 && r <= 0) return 1;
    if (l <= 0 && r >= 0) return -1;
    mpz_class l2 = l * l, r2 = r * r * na.a;
    bool pos = l > 0 ? l2 > r2 : l2 < r2;
    return pos ? 1 : -1;
}

}  // namespace

GroupShape oracle_group_shape(i64 a, i64 b) {
    i64 ab = nt::squarefree_kernel(a * b);
    GroupShape shape = (ab == 1) ? GroupShape::cyclic4 : GroupShape::dihedral8;
    NormalizedAlpha na = normalized_alpha(a, b);
    std::vector<mpz_class> f = (shape == GroupShape::cyclic4) ? quartic_poly(na) : octic_poly(na, 1);
    // sampling check: degree patterns mod many primes must only show element
    // orders dividing 4, never an order-8 Frobenius
    int checked = 0;
    for (i64 p = 101; checked < 25; p += 2) {
        if (!nt::is_prime_u64((u64)p)) continue;
        PolyP fp = reduce_mpz_poly(f, (u64)p);
        PolyP g = poly_gcd(fp, poly_deriv(fp));
        if (g.deg() > 0) {
            continue;  // skip ramified-looking primes
        }
        // f irreducible mod p would mean an order-8 Frobenius
        PolyP xq = poly_powmod_x((u64)p, fp);
        PolyP acc = xq;
        bool reducible = false;
        for (int d = 1; d <= fp.deg() / 2; ++d) {
            PolyP t = acc;
            if (t.c.size() < 2) t.c.resize(2, 0);
            t.c[1] = (t.c[1] + (u64)p - 1) % (u64)p;
            t.trim();
            PolyP g2 = poly_gcd(fp, t);
            if (g2.deg() > 0) {
                reducible = true;
                if (g2.deg() == fp.deg()) break;  // all factors of degree <= d
                break;
            }
            acc = poly_powmod(acc, (u64)p, fp);
        }
        if (!reducible && fp.deg() == 8)
            throw internal_error("oracle_group_shape: order-8 Frobenius found; field is not dihedral");
        ++checked;
    }
    return shape;
}

RedeiResult frobenius_oracle(const RedeiTriple& t) {
    SymbolStatus st = symbol_status(t);
    if (st != SymbolStatus::nonzero)
        throw precondition_error("frobenius_oracle: symbol status must be nonzero");
    if (t.a == 1 || t.b == 1 || t.c == 1) return RedeiResult::of(1);

    if ((int)nt::factor_u64((u64)std::llabs(t.c)).size() > 4)
        throw precondition_error("frobenius_oracle: c has more than 4 prime factors");

    // The Frobenius-product formula needs a 1 mod 8 slot (reciprocity moves
    // one there); outside that frame a 2-adic correction term survives.
    i64 A = t.a, B = t.b, slot = t.c;
    auto m8 = [](i64 v) { return ((v % 8) + 8) % 8; };
    if (m8(slot) != 1) {
        if (m8(t.b) == 1) {
            slot = t.b;
            B = t.c;
        } else if (m8(t.a) == 1) {
            slot = t.a;
            A = t.c;
        } else {
            throw internal_error("frobenius_oracle: nonzero status without a 1 mod 8 slot");
        }
    }
    if (nt::gcd64(slot, 2 * A * B) != 1)
        throw unsupported_error("frobenius_oracle: slot shares ramification with the pair (all generator shifts would fail)");
    auto cf = nt::factor_u64((u64)std::llabs(slot));

    NormalizedAlpha base = normalized_alpha(A, B);
    bool quartic = nt::squarefree_kernel(A * B) == 1;

    int value = 1;
    for (auto [pu, e] : cf) {
        i64 p = (i64)pu;
        std::optional<int> got;
        for (i64 tt = 1; tt <= 6 && !got; ++tt) {
            for (i64 k = 0; k <= 3 && !got; ++k) {
                NormalizedAlpha na = k == 0 ? base : shift_delta(base, k);
                std::vector<mpz_class> f = quartic ? quartic_poly(na) : octic_poly(na, tt);
                got = gamma_from_pattern(f, p);
            }
            if (quartic) break;  // no t-shifts in the quartic case beyond delta shifts
        }
        if (!got) throw unsupported_error("frobenius_oracle: all generator shifts ramify at " + std::to_string(p));
        value *= *got;
    }
    if (slot < 0) value *= sign_of_delta(base);
    return RedeiResult::of(value);
}

std::vector<FixtureRecord> generate_fixture_corpus() {
    std::vector<RedeiTriple> triples;

    // primes p = 1 mod 8 with (2|p) = (7|p) = 1: twenty c-slots for the pair (2,7)
    int found = 0;
    for (i64 p = 17; found < 20; p += 8) {
        if (!nt::is_prime_u64((u64)p)) continue;
        if (nt::legendre(2, p) != 1 || nt::legendre(7, p) != 1) continue;
        triples.push_back({2, 7, p});
        ++found;
    }
    // the pair (13, 17) against primes q = 1 mod 8 split in both quadratic fields
    found = 0;
    for (i64 q = 17; found < 20; q += 8) {
        if (!nt::is_prime_u64((u64)q)) continue;
        if (q == 13 || q == 17) continue;
        if (nt::legendre(13, q) != 1 || nt::legendre(17, q) != 1) continue;
        triples.push_back({13, 17, q});
        ++found;
    }
    // mixed shapes: negative entries, composite slots, non-prime pairs
    const RedeiTriple extras[] = {
        {-7, 2, 113},  {-7, -1, 337}, {5, 11, 409}, {21, 5, 41 * 17}, {-3, 13, 61},
        {10, -2, 89},  {15, 7, 313},  {6, 19, 145}, {2, 7, 17 * 41},  {13, 17, 89 * 97},
        {-11, 3, 37},  {34, 2, 17},   {5, 29, 181}, {-15, 17, 449},   {7, 57, 193},
        {11, 14, 617}, {3, 35, 577},
    };
    for (const auto& t : extras) triples.push_back(t);

    std::vector<FixtureRecord> out;
    for (const auto& t : triples) {
        try {
            if (symbol_status(t) != SymbolStatus::nonzero) continue;
            RedeiResult r = frobenius_oracle(t);
            if (!r.defined) continue;
            out.push_back({t.a, t.b, t.c, r.value});
        } catch (const unsupported_error&) {
            continue;  // shares ramification with the pair; outside the oracle's domain
        } catch (const precondition_error&) {
            continue;
        }
    }
    return out;
}

}  // namespace cdlab::redei
