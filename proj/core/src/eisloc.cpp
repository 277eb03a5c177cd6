#include "cdlab/eisloc.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "cdlab/errors.hpp"

namespace cdlab::eisloc {

using arith::EisensteinInt;

namespace {

int v3(const mpz_class& x) {
    if (x == 0) return 1 << 20;
    mpz_class t = x;
    int n = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), 3)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 3);
        ++n;
    }
    return n;
}

int v2z(const mpz_class& x) {
    if (x == 0) return 1 << 20;
    return (int)mpz_scan1(x.get_mpz_t(), 0);
}

EisensteinInt div_lambda(const EisensteinInt& x) {
    // x / lambda = x * (2 + w) / 3
    EisensteinInt t = x * EisensteinInt{2, 1};
    if (!mpz_divisible_ui_p(t.a.get_mpz_t(), 3) || !mpz_divisible_ui_p(t.b.get_mpz_t(), 3))
        throw internal_error("div_lambda: not divisible");
    return {t.a / 3, t.b / 3};
}

struct Mod27 {
    int u, v;
    bool operator<(const Mod27& o) const { return u != o.u ? u < o.u : v < o.v; }
};

Mod27 red27(const EisensteinInt& x) {
    return {(int)mpz_class(((x.a % 27) + 27) % 27).get_si(), (int)mpz_class(((x.b % 27) + 27) % 27).get_si()};
}

bool unit27(const Mod27& m) { return (m.u + m.v) % 3 != 0; }

Mod27 mul27(const Mod27& x, const Mod27& y) {
    int a = (x.u * y.u - x.v * y.v) % 27;
    int b = (x.u * y.v + x.v * y.u - x.v * y.v) % 27;
    return {((a % 27) + 27) % 27, ((b % 27) + 27) % 27};
}

// lambda-adic unit classification table mod 27 (= lambda^6): class of a unit
// modulo cubes is determined by its residue at this level.
struct LambdaTable {
    std::map<Mod27, gf3::Vec> coords;

    LambdaTable() {
        std::map<Mod27, bool> cube;
        std::vector<Mod27> units;
        for (int u = 0; u < 27; ++u)
            for (int v = 0; v < 27; ++v) {
                Mod27 m{u, v};
                if (unit27(m)) units.push_back(m);
            }
        for (const auto& w : units) {
            Mod27 w3 = mul27(mul27(w, w), w);
            cube[w3] = true;
        }
        // generators: w, 1 - 3w, -2 - 6w  (i.e. w, 1 + lambda^2, 1 + lambda^3)
        Mod27 g1{0, 1}, g2{1, 24}, g3{25, 21};
        auto inv = [&](const Mod27& m) {
            for (const auto& c : units)
                if (mul27(m, c).u == 1 && mul27(m, c).v == 0) return c;
            throw internal_error("lambda table: unit has no inverse");
        };
        Mod27 ig1 = inv(g1), ig2 = inv(g2), ig3 = inv(g3);
        for (const auto& un : units) {
            int found = 0;
            gf3::Vec got;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) {
                        Mod27 t = un;
                        for (int s = 0; s < i; ++s) t = mul27(t, ig1);
                        for (int s = 0; s < j; ++s) t = mul27(t, ig2);
                        for (int s = 0; s < k; ++s) t = mul27(t, ig3);
                        if (cube.count(t)) {
                            ++found;
                            got = {(std::uint8_t)i, (std::uint8_t)j, (std::uint8_t)k};
                        }
                    }
            if (found != 1) throw internal_error("lambda table: generators do not coordinatize U/U^3");
            coords[un] = got;
        }
    }
};

const LambdaTable& table() {
    static LambdaTable t;
    return t;
}

}  // namespace

int val_lambda(const EisensteinInt& x) {
    if (x.is_zero()) throw std::invalid_argument("val_lambda of zero");
    // x = (a+b) - b*lambda in the {1, lambda} frame
    int va = 2 * v3(x.a + x.b);
    int vb = 1 + 2 * v3(x.b);
    if (x.a + x.b == 0) return vb;
    if (x.b == 0) return va;
    return std::min(va, vb);
}

int val_2(const EisensteinInt& x) {
    if (x.is_zero()) throw std::invalid_argument("val_2 of zero");
    return std::min(v2z(x.a), v2z(x.b));
}

gf3::Vec coords_at_2(const EisensteinInt& x) {
    int v = val_2(x);
    EisensteinInt u{x.a >> v, x.b >> v};
    int ua = (int)mpz_class(((u.a % 2) + 2) % 2).get_si();
    int ub = (int)mpz_class(((u.b % 2) + 2) % 2).get_si();
    int dlog;
    if (ua == 1 && ub == 0)
        dlog = 0;
    else if (ua == 0 && ub == 1)
        dlog = 1;
    else if (ua == 1 && ub == 1)
        dlog = 2;
    else
        throw internal_error("coords_at_2: residue not a unit");
    return {(std::uint8_t)(((v % 3) + 3) % 3), (std::uint8_t)dlog};
}

gf3::Vec coords_at_lambda(const EisensteinInt& x) {
    int v = val_lambda(x);
    EisensteinInt u = x;
    for (int i = 0; i < v; ++i) u = div_lambda(u);
    auto it = table().coords.find(red27(u));
    if (it == table().coords.end()) throw internal_error("coords_at_lambda: unit not in table");
    gf3::Vec out{(std::uint8_t)(((v % 3) + 3) % 3)};
    out.insert(out.end(), it->second.begin(), it->second.end());
    return out;
}

bool unit_is_cube_at_lambda(const EisensteinInt& unit) {
    auto c = coords_at_lambda(unit);
    return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
}

}  // namespace cdlab::eisloc
