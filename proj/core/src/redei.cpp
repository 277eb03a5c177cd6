#include "cdlab/redei.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "cdlab/errors.hpp"
#include "cdlab/hilbert.hpp"
#include "cdlab/nt.hpp"

namespace cdlab::redei {

using nt::i64;
using nt::u64;

namespace {

i64 mod8(i64 x) { return ((x % 8) + 8) % 8; }

std::vector<i64> prime_support(i64 n) {
    std::vector<i64> ps;
    for (auto [p, e] : nt::factor_u64((u64)std::llabs(n))) ps.push_back((i64)p);
    return ps;
}

}  // namespace

SymbolStatus symbol_status(const RedeiTriple& t) {
    for (i64 v : {t.a, t.b, t.c})
        if (v == 0 || !nt::is_squarefree(v)) throw std::invalid_argument("symbol_status: arguments must be squarefree and nonzero");

    // A place ramifying in all three quadratic fields kills definedness.
    if (t.a < 0 && t.b < 0 && t.c < 0) return SymbolStatus::undefined;
    auto ram2 = [](i64 x) { return mod8(x) != 1 && ((x % 4 + 4) % 4) != 1; };  // 2 ramifies in Q(sqrt x) iff x != 1 mod 4
    if (ram2(t.a) && ram2(t.b) && ram2(t.c)) return SymbolStatus::undefined;
    {
        i64 g = nt::gcd64(nt::gcd64(t.a, t.b), t.c);
        if (g > 1) return SymbolStatus::undefined;  // any odd p | gcd ramifies in all three
    }

    // All pairwise Hilbert symbols must be +1 everywhere.
    std::set<i64> ps{2};
    for (i64 v : {t.a, t.b, t.c})
        for (i64 p : prime_support(v)) ps.insert(p);
    std::array<std::pair<i64, i64>, 3> pairs{{{t.a, t.b}, {t.a, t.c}, {t.b, t.c}}};
    for (const auto& [x, y] : pairs) {
        if (arith::hilbert_symbol(x, y, arith::Place::infinity()) == -1) return SymbolStatus::undefined;
        for (i64 p : ps)
            if (arith::hilbert_symbol(x, y, arith::Place::prime(p)) == -1) return SymbolStatus::undefined;
    }

    if (mod8(t.a) != 1 && mod8(t.b) != 1 && mod8(t.c) != 1) return SymbolStatus::zero;
    return SymbolStatus::nonzero;
}

// ---------------------------------------------------------------------------
// 2-adic normalization of delta.
//
// delta may be adjusted by the multipliers {+-1, +-2, +-eps, +-2 eps} (eps a
// norm +1 fundamental unit, when one exists) without moving its norm out of
// b*(Q^*)^2.  Among those candidates we pick the one whose quadratic
// extension of Q(sqrt a) is least ramified above 2, measured by a quadratic
// defect score per prime above 2.  The rule table lives in score_candidate;
// its correctness contract is agreement with the Frobenius oracle and the
// permutation suite, not any claim about the table itself.
// ---------------------------------------------------------------------------

namespace {

// square root of a mod 2^N for a = 1 mod 8, bit-by-bit lift
mpz_class sqrt_2adic(const mpz_class& a, int N) {
    mpz_class mod = mpz_class(1) << N;
    mpz_class w = 1;
    for (int k = 3; k < N; ++k) {
        mpz_class cur = (w * w - a) % (mpz_class(1) << (k + 1));
        if (cur != 0) w += mpz_class(1) << (k - 1);
    }
    return ((w % mod) + mod) % mod;
}

struct Pair2 {  // x + y*sqrt(a) with coordinates mod 2^N
    mpz_class x, y;
};

constexpr int kPrec2 = 24;
const mpz_class kMod2 = mpz_class(1) << kPrec2;

mpz_class m2(const mpz_class& v) { return ((v % kMod2) + kMod2) % kMod2; }

Pair2 p2_mul(const Pair2& u, const Pair2& v, i64 a) {
    return {m2(u.x * v.x + a * u.y * v.y), m2(u.x * v.y + u.y * v.x)};
}

int val2(const mpz_class& v) {
    if (v == 0) return kPrec2 + 100;  // "infinite" to the precision we care about
    return (int)mpz_scan1(v.get_mpz_t(), 0);
}

// v_P(x + y sqrt a) computed through the norm; e = v_P(2).
int val2_pair(const Pair2& u, i64 a, int e) {
    mpz_class n = m2(u.x * u.x - a * u.y * u.y);
    int vn = val2(n);
    if (e == 2) return vn;  // ramified: v_P = v_2(N)
    return vn / 2;  // inert: v_P = v_2(N)/2 (split handled elsewhere)
}

// Quadratic defect level of the unit u in the completion: the largest
// k <= cap such that some w has v_P(w^2 - u) >= k.  Brute search over w.
int defect_level(const Pair2& u, i64 a, int e, int cap) {
    int best = 0;
    for (i64 wx = 0; wx < 16; ++wx) {
        for (i64 wy = 0; wy < 16; ++wy) {
            if (e == 1 && wx % 2 == 0 && wy % 2 == 0) continue;
            Pair2 w{mpz_class((long)wx), mpz_class((long)wy)};
            Pair2 w2 = p2_mul(w, w, a);
            Pair2 diff{m2(w2.x - u.x), m2(w2.y - u.y)};
            int v;
            if (diff.x == 0 && diff.y == 0)
                v = cap;
            else if (e == 2)
                v = val2_pair(diff, a, 2);
            else {
                // inert; integral basis includes (1+sqrt a)/2, so odd x,y
                // pairs with x = y mod 2 represent half-integral elements;
                // the plain norm valuation still reads v_P correctly.
                v = val2_pair(diff, a, 1);
            }
            best = std::max(best, std::min(v, cap));
            if (best == cap) return best;
        }
    }
    return best;
}

// Ramification score of Q(sqrt a, sqrt delta)/Q(sqrt a) above 2 for one
// candidate; larger is less ramified.
int score_candidate(const mpz_class& dx, const mpz_class& dy, i64 a) {
    i64 a8 = ((a % 8) + 8) % 8;
    if (a8 == 1) {
        // split: two primes, each completion Q_2
        mpz_class s = sqrt_2adic(m2(mpz_class((long)a)), kPrec2);
        int total = 0;
        for (int sign = 0; sign < 2; ++sign) {
            mpz_class w = sign ? m2(mpz_class(dx - dy * s)) : m2(mpz_class(dx + dy * s));
            int v = val2(w);
            if (v > kPrec2 / 2) return -1;  // precision loss: treat as unusable
            if (v & 1) {
                total += 0;
                continue;
            }
            mpz_class u = (w >> v) & 7;
            long r = u.get_si();
            if (r == 1)
                total += 4;
            else if (r == 5)
                total += 3;
            else
                total += 1;
        }
        return total;
    }
    int e = (a % 2 == 0 || ((a % 4) + 4) % 4 == 3) ? 2 : 1;
    Pair2 d{m2(dx), m2(dy)};
    int v = val2_pair(d, a, e);
    if (v > kPrec2 - 8) return -1;
    if (v & 1) return 0;
    // strip the even valuation: divide by 2^(v/2) when e=1; by pi^v when e=2
    Pair2 u = d;
    if (e == 1) {
        u = {m2(u.x >> (v / 2)), m2(u.y >> (v / 2))};
        // division by 2^k is only valid if both coords are divisible; if not,
        // the element involves the half-integral basis and the defect search
        // below still sees the right class via scaling by a square 4^k.
        if ((d.x >> (v / 2)) << (v / 2) != d.x || (d.y >> (v / 2)) << (v / 2) != d.y) u = d;
        int cap = 3;
        return defect_level(u, a, e, cap) * 2;
    }
    // ramified: uniformizer pi = sqrt(a) if a even, else 1 + sqrt(a)
    Pair2 pi = (a % 2 == 0) ? Pair2{mpz_class(0), mpz_class(1)} : Pair2{mpz_class(1), mpz_class(1)};
    mpz_class npi = pi.x * pi.x - a * pi.y * pi.y;  // valuation 1 at P
    Pair2 cur = d;
    for (int i = 0; i < v; ++i) {
        // divide by pi: multiply by conj(pi) then divide by N(pi)
        Pair2 conj{m2(pi.x), m2(-pi.y)};
        Pair2 t = p2_mul(cur, conj, a);
        mpz_class n = npi;
        int vn = val2(n);
        // exact division by the odd part and the 2-power of N(pi)
        mpz_class odd = n >> vn;
        mpz_class oinv;
        mpz_class mm = kMod2;
        mpz_invert(oinv.get_mpz_t(), odd.get_mpz_t(), mm.get_mpz_t());
        t.x = m2((t.x >> vn) * oinv);
        t.y = m2((t.y >> vn) * oinv);
        cur = t;
    }
    int cap = 5;
    return defect_level(cur, a, 2, cap);
}

// fundamental unit of Z[sqrt a] with norm +1, via Pell continued fractions;
// nullopt when a < 2 or the minimal unit has norm -1
std::optional<std::pair<mpz_class, mpz_class>> pell_unit(i64 a) {
    if (a < 2) return std::nullopt;
    i64 a0 = (i64)nt::isqrt_u64((u64)a);
    if (a0 * a0 == a) return std::nullopt;
    i64 m = 0, d = 1, q = a0;
    mpz_class h2 = 1, h1 = a0, k2 = 0, k1 = 1;
    for (int it = 0; it < 20000; ++it) {
        m = d * q - m;
        d = (a - m * m) / d;
        q = (a0 + m) / d;
        mpz_class h = q * h1 + h2, k = q * k1 + k2;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        mpz_class norm = h1 * h1 - a * k1 * k1;
        if (norm == 1) return std::make_pair(h1, k1);
        if (norm == -1) {
            // square it: (h + k sqrt a)^2 has norm +1 but is a square, hence
            // useless as a class multiplier
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::shared_mutex g_alpha_mu;
std::map<std::pair<i64, i64>, NormalizedAlpha> g_alpha_cache;

}  // namespace

NormalizedAlpha normalized_alpha(i64 a, i64 b) {
    if (a == 1) throw precondition_error("normalized_alpha: a = 1 is a caller-handled degenerate case");
    {
        std::shared_lock lk(g_alpha_mu);
        auto it = g_alpha_cache.find({a, b});
        if (it != g_alpha_cache.end()) return it->second;
    }
    auto conic = arith::solve_conic(a, b, /*prefer_nonzero_x=*/true);
    if (!conic.solution) throw precondition_error("normalized_alpha: conic insoluble (Hilbert symbol fails)");
    auto sol = *conic.solution;

    NormalizedAlpha na;
    na.a = a;
    na.b = b;
    na.sol = sol;

    struct Candidate {
        mpz_class dx, dy, zpart;
        std::string label;
    };
    std::vector<Candidate> cands;
    mpz_class X = (long)sol.x, Y = (long)sol.y, Z = (long)sol.z;
    cands.push_back({X, Y, Z, "1"});
    cands.push_back({-X, -Y, Z, "-1"});
    cands.push_back({2 * X, 2 * Y, 2 * Z, "2"});
    cands.push_back({-2 * X, -2 * Y, 2 * Z, "-2"});
    if (auto eps = pell_unit(a)) {
        auto [ex, ey] = *eps;
        mpz_class ux = X * ex + mpz_class((long)a) * Y * ey;
        mpz_class uy = X * ey + Y * ex;
        cands.push_back({ux, uy, Z, "eps"});
        cands.push_back({-ux, -uy, Z, "-eps"});
        cands.push_back({2 * ux, 2 * uy, 2 * Z, "2eps"});
        cands.push_back({-2 * ux, -2 * uy, 2 * Z, "-2eps"});
    }

    auto positive = [&](const Candidate& c) {
        if (a < 0) return true;
        if (c.dy == 0) return c.dx > 0;
        mpz_class lhs = c.dx, rhs = -c.dy;  // dx + dy sqrt(a) > 0 <=> dx > -dy sqrt(a)
        // compare dx and -dy*sqrt(a) by signs and squares
        if (lhs >= 0 && rhs <= 0) return !(lhs == 0 && rhs == 0);
        if (lhs < 0 && rhs >= 0) return false;
        bool both_pos = lhs > 0;
        mpz_class l2 = lhs * lhs, r2 = rhs * rhs * a;
        return both_pos ? l2 > r2 : l2 < r2;
    };

    int best_score = -1000;
    int best_idx = -1;
    for (int i = 0; i < (int)cands.size(); ++i) {
        int sc = score_candidate(cands[i].dx, cands[i].dy, a);
        na.audit.push_back("cand " + cands[i].label + " score " + std::to_string(sc));
        int tie = positive(cands[i]) ? 1 : 0;
        int key = sc * 4 + tie * 2;
        if (key > best_score) {
            best_score = key;
            best_idx = i;
        }
    }
    na.dx = cands[best_idx].dx;
    na.dy = cands[best_idx].dy;
    na.norm_sq = cands[best_idx].zpart;
    na.audit.push_back("chose " + cands[best_idx].label);

    {
        std::unique_lock lk(g_alpha_mu);
        g_alpha_cache[{a, b}] = na;
    }
    return na;
}

// ---------------------------------------------------------------------------
// gamma(Frob) at the places dividing the normalized third slot
// ---------------------------------------------------------------------------

namespace {

// Hensel sqrt of a mod p^K as mpz (p odd, (a|p)=1, p does not divide a)
mpz_class sqrt_mod_pK(i64 a, i64 p, int K) {
    mpz_class P = p, mod;
    mpz_pow_ui(mod.get_mpz_t(), P.get_mpz_t(), K);
    i64 am = ((a % p) + p) % p;
    auto r0 = nt::sqrt_mod_p((u64)am, (u64)p);
    if (!r0) throw internal_error("sqrt_mod_pK: not a residue");
    mpz_class r = (unsigned long)*r0;
    mpz_class cur = p;
    mpz_class A = ((mpz_class((long)a) % mod) + mod) % mod;
    while (cur < mod) {
        cur = cur * cur;
        if (cur > mod) cur = mod;
        mpz_class f = (r * r - A) % cur;
        mpz_class t = (2 * r) % cur, tinv;
        if (mpz_invert(tinv.get_mpz_t(), t.get_mpz_t(), cur.get_mpz_t()) == 0)
            throw internal_error("sqrt_mod_pK: lift stalled");
        r = ((r - f * tinv) % cur + cur) % cur;
    }
    return r % mod;
}

int val_p(const mpz_class& v, i64 p) {
    if (v == 0) return 1 << 28;
    mpz_class t = v;
    int n = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), (unsigned long)p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), (unsigned long)p);
        ++n;
    }
    return n;
}

int gamma_at_odd_p(const NormalizedAlpha& na, i64 p) {
    mpz_class N = na.norm();
    if (na.a % p == 0) {
        // p ramified in Q(sqrt a); evaluate at the ramified prime, where the
        // even-valuation unit part reduces to dx / p^k
        int vN = val_p(N, p);
        if (vN % 2 != 0) throw internal_error("gamma: odd valuation at ramified prime");
        int k = vN / 2;
        if (val_p(na.dx, p) != k || val_p(na.dy, p) < k)
            throw internal_error("gamma: unexpected coordinate valuations at ramified prime");
        mpz_class u = na.dx;
        for (int i = 0; i < k; ++i) mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), (unsigned long)p);
        i64 um = mpz_class(((u % p) + p) % p).get_si();
        return nt::legendre(um, p);
    }
    if (nt::legendre(((na.a % p) + p) % p, p) != 1)
        throw internal_error("gamma: place dividing the slot is inert in Q(sqrt a)");
    int K = val_p(N, p) + 6;
    for (int attempt = 0; attempt < 6; ++attempt, K += 8) {
        mpz_class mod;
        mpz_class P = p;
        mpz_pow_ui(mod.get_mpz_t(), P.get_mpz_t(), K);
        mpz_class s = sqrt_mod_pK(na.a, p, K);
        for (int sign = 0; sign < 2; ++sign) {
            mpz_class wraw = sign ? mpz_class(na.dx - na.dy * s) : mpz_class(na.dx + na.dy * s);
            mpz_class w = ((wraw % mod) + mod) % mod;
            if (w == 0) continue;  // precision exhausted on this branch
            int v = val_p(w, p);
            if (v >= K - 2) continue;
            if (v % 2 != 0) continue;
            mpz_class u = w;
            for (int i = 0; i < v; ++i) mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), (unsigned long)p);
            i64 um = mpz_class(((u % p) + p) % p).get_si();
            return nt::legendre(um, p);
        }
    }
    throw internal_error("gamma: no even-valuation branch found");
}

int gamma_at_infinity(const NormalizedAlpha& na) {
    // sign of dx + dy sqrt(a) under the real embedding with sqrt(a) > 0
    if (na.a < 0) throw internal_error("gamma at infinity with imaginary field");
    if (na.dy == 0) return na.dx > 0 ? 1 : -1;
    mpz_class l = na.dx, r = -na.dy;
    if (l >= 0 && r <= 0) return 1;
    if (l <= 0 && r >= 0) return -1;
    mpz_class l2 = l * l, r2 = r * r * na.a;
    bool pos = l > 0 ? l2 > r2 : l2 < r2;
    return pos ? 1 : -1;
}

struct Frame {
    i64 A, B, slot;
};

// Deterministic evaluation frame: the slot must be 1 mod 8; prefer a slot
// coprime to the pair, and inside the pair put the argument sharing primes
// with the slot second (delta then lives in Q(sqrt first), where every slot
// prime splits).
std::optional<Frame> pick_frame(const RedeiTriple& t) {
    struct Option {
        i64 A, B, slot;
        int pref;
    };
    std::vector<Option> opts;
    auto add = [&](i64 A, i64 B, i64 slot, int order) {
        if (mod8(slot) != 1) return;
        i64 gA = nt::gcd64(A, slot), gB = nt::gcd64(B, slot);
        int coprime = (gA == 1 && gB == 1) ? 0 : 1;
        if (gA != 1 && gB == 1) std::swap(A, B), std::swap(gA, gB);
        // now any sharing is concentrated on B when possible
        int ram = gA != 1 ? 1 : 0;
        opts.push_back({A, B, slot, coprime * 4 + ram * 2 + order});
    };
    add(t.a, t.b, t.c, 0);
    add(t.a, t.c, t.b, 1);
    add(t.b, t.c, t.a, 1);
    if (opts.empty()) return std::nullopt;
    std::sort(opts.begin(), opts.end(), [](const Option& x, const Option& y) { return x.pref < y.pref; });
    return Frame{opts[0].A, opts[0].B, opts[0].slot};
}

}  // namespace

RedeiResult redei_symbol(const RedeiTriple& t) {
    SymbolStatus st = symbol_status(t);
    if (st == SymbolStatus::undefined) return RedeiResult::undefined();
    if (st == SymbolStatus::zero) return RedeiResult::of(0);
    if (t.a == 1 || t.b == 1 || t.c == 1) return RedeiResult::of(1);

    auto frame = pick_frame(t);
    if (!frame) throw internal_error("redei_symbol: nonzero status but no 1 mod 8 slot");
    NormalizedAlpha na = normalized_alpha(frame->A, frame->B);

    int value = 1;
    for (i64 p : prime_support(frame->slot)) value *= gamma_at_odd_p(na, p);
    if (frame->slot < 0) value *= gamma_at_infinity(na);
    return RedeiResult::of(value);
}

void write_fixtures(const std::string& path, const std::vector<FixtureRecord>& recs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_fixtures: cannot open " + path);
    for (const auto& r : recs) {
        out << "{\"a\":" << r.a << ",\"b\":" << r.b << ",\"c\":" << r.c << ",\"value\":" << r.value << "}\n";
    }
}

std::vector<FixtureRecord> read_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_fixtures: cannot open " + path);
    std::vector<FixtureRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        FixtureRecord r{};
        long long a, b, c;
        int v;
        if (std::sscanf(line.c_str(), "{\"a\":%lld,\"b\":%lld,\"c\":%lld,\"value\":%d}", &a, &b, &c, &v) != 4)
            throw std::runtime_error("read_fixtures: bad record: " + line);
        r.a = a;
        r.b = b;
        r.c = c;
        r.value = v;
        out.push_back(r);
    }
    return out;
}

}  // namespace cdlab::redei
