#include "cdlab/trilinear.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "cdlab/errors.hpp"
#include "cdlab/nt.hpp"
#include "cdlab/redei.hpp"
#include "cdlab/rng.hpp"

namespace cdlab::trilinear {

using nt::i64;
using nt::u64;

std::string mode_name(Mode m) { return m == Mode::ones ? "ones" : "random_unit"; }

namespace {

// per-value data for the box enumeration
struct Entry {
    i64 d = 0;
    bool squarefree = false;
    bool one_mod8 = false;
    bool neg = false;
    bool ram2 = false;      // 2 ramifies in Q(sqrt d)
    u64 prime_mask = 0;     // bit i: (i-th small prime) divides d
    std::vector<i64> primes;
};

const i64 kSmallPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,  47,  53,  59,  61,
                            67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139};

std::vector<Entry> box(double H) {
    std::vector<Entry> out;
    i64 lim = (i64)H;
    for (i64 d = -(lim - 1); d <= lim - 1; ++d) {
        if (d == 0 || std::llabs((double)d) >= H) continue;
        Entry e;
        e.d = d;
        e.squarefree = nt::is_squarefree(d);
        e.one_mod8 = ((d % 8) + 8) % 8 == 1;
        e.neg = d < 0;
        i64 m = ((d % 4) + 4) % 4;
        e.ram2 = (m != 1);
        if (e.squarefree) {
            for (auto [p, ex] : nt::factor_u64((u64)std::llabs(d))) {
                e.primes.push_back((i64)p);
                for (size_t i = 0; i < sizeof(kSmallPrimes) / sizeof(i64); ++i)
                    if ((i64)p == kSmallPrimes[i]) e.prime_mask |= (1ull << i);
            }
        }
        out.push_back(e);
    }
    return out;
}

// pairwise Hilbert-definedness, cached per ordered value pair
struct PairOk {
    std::map<std::pair<i64, i64>, bool> memo;

    bool ok(const Entry& x, const Entry& y) {
        auto key = std::minmax(x.d, y.d);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool good = true;
        if (x.d < 0 && y.d < 0) good = false;  // only the pair matters at infinity with the third slot
        if (good) {
            if (arith::hilbert_symbol(x.d, y.d, arith::Place::infinity()) == -1) good = false;
            if (good && arith::hilbert_symbol(x.d, y.d, arith::Place::prime(2)) == -1) good = false;
            for (i64 p : x.primes)
                if (good && arith::hilbert_symbol(x.d, y.d, arith::Place::prime(p)) == -1) good = false;
            for (i64 p : y.primes)
                if (good && arith::hilbert_symbol(x.d, y.d, arith::Place::prime(p)) == -1) good = false;
        }
        memo[key] = good;
        return good;
    }
};

}  // namespace

SumReport trilinear_sum_with(double H1, double H2, double H3, const Coeff2& a12, const Coeff2& a13,
                             const Coeff2& a23) {
    if (H1 < 3 || H2 < 3 || H3 < 3) throw std::invalid_argument("trilinear_sum: H_i >= 3 required");
    if (H1 * H2 * H3 > 1e8) throw resource_limit_error("trilinear_sum: exhaustive-term budget exceeded");

    auto b1 = box(H1), b2 = box(H2), b3 = box(H3);
    PairOk pairs;

    SumReport rep;
    rep.H1 = H1;
    rep.H2 = H2;
    rep.H3 = H3;

    for (const auto& e1 : b1) {
        if (!e1.squarefree) continue;
        for (const auto& e2 : b2) {
            if (!e2.squarefree) continue;
            if (!pairs.ok(e1, e2)) continue;
            // the pair is admissible; sweep the inner variable
            for (const auto& e3 : b3) {
                if (!e3.squarefree) continue;
                // ramification at some place in all three kills the symbol
                if (e1.neg && e2.neg && e3.neg) continue;
                if (e1.ram2 && e2.ram2 && e3.ram2) continue;
                if (e1.prime_mask & e2.prime_mask & e3.prime_mask) continue;  // fast path, small primes
                i64 g = nt::gcd64(nt::gcd64(e1.d, e2.d), e3.d);
                while (g % 2 == 0) g /= 2;
                if (g > 1) continue;
                if (!e1.one_mod8 && !e2.one_mod8 && !e3.one_mod8) continue;  // symbol is zero
                if (!pairs.ok(e1, e3) || !pairs.ok(e2, e3)) continue;
                redei::RedeiResult r = redei::redei_symbol({e1.d, e2.d, e3.d});
                if (!r.defined || r.value == 0) continue;
                int coeff = a12(e1.d, e2.d) * a13(e1.d, e3.d) * a23(e2.d, e3.d);
                rep.raw_sum += coeff * r.value;
                ++rep.nonzero_terms;
            }
        }
    }
    rep.normalized = (double)std::llabs(rep.raw_sum) / (double)std::max<std::int64_t>(1, rep.nonzero_terms);
    return rep;
}

SumReport trilinear_sum(double H1, double H2, double H3, Mode mode, u64 seed) {
    Coeff2 a12, a13, a23;
    if (mode == Mode::ones) {
        a12 = a13 = a23 = [](i64, i64) { return 1; };
    } else {
        a12 = [seed](i64 u, i64 v) { return coeff_sign(seed, 12, u, v); };
        a13 = [seed](i64 u, i64 v) { return coeff_sign(seed, 13, u, v); };
        a23 = [seed](i64 u, i64 v) { return coeff_sign(seed, 23, u, v); };
    }
    SumReport rep = trilinear_sum_with(H1, H2, H3, a12, a13, a23);
    rep.mode = mode;
    rep.seed = seed;
    return rep;
}

SumReport bilinear_jacobi_sum(double H1, double H2, Mode mode, u64 seed) {
    if (H1 < 3 || H2 < 3) throw std::invalid_argument("bilinear_jacobi_sum: H_i >= 3 required");
    if (H1 * H2 > 1e8) throw resource_limit_error("bilinear_jacobi_sum: budget exceeded");
    SumReport rep;
    rep.H1 = H1;
    rep.H2 = H2;
    rep.mode = mode;
    rep.seed = seed;
    i64 l1 = (i64)H1, l2 = (i64)H2;
    for (i64 d2 = -(l2 - 1); d2 <= l2 - 1; ++d2) {
        if (d2 == 0 || (d2 & 1) == 0) continue;  // even denominators count as zero
        i64 n = std::llabs(d2);
        for (i64 d1 = -(l1 - 1); d1 <= l1 - 1; ++d1) {
            int sym = nt::jacobi(d1, n);
            if (sym == 0) continue;
            int coeff = 1;
            if (mode == Mode::random_unit)
                coeff = coeff_sign(seed, 1, d1, 0) * coeff_sign(seed, 2, d2, 0);
            rep.raw_sum += coeff * sym;
            ++rep.nonzero_terms;
        }
    }
    rep.normalized = (double)std::llabs(rep.raw_sum) / (double)std::max<std::int64_t>(1, rep.nonzero_terms);
    return rep;
}

std::vector<SumReport> decay_report(const std::vector<double>& Hs, Mode mode, u64 seed) {
    std::vector<SumReport> out;
    for (double H : Hs) out.push_back(trilinear_sum(H, H, H, mode, seed));
    return out;
}

std::string to_csv(const std::vector<SumReport>& reports) {
    std::ostringstream os;
    os << "H1,H2,H3,mode,seed,raw_sum,nonzero_terms,normalized\n";
    char buf[256];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%g,%g,%g,%s,%llu,%lld,%lld,%.9g", r.H1, r.H2, r.H3,
                      mode_name(r.mode).c_str(), (unsigned long long)r.seed, (long long)r.raw_sum,
                      (long long)r.nonzero_terms, r.normalized);
        os << buf << "\n";
    }
    return os.str();
}

}  // namespace cdlab::trilinear
