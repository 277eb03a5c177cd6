#include "cdlab/nt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdlab::nt {

i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // This base set is a proven witness set for all n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    // Brent variant; the increment c walks a fixed sequence so results are
    // reproducible run to run.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 ys = y;
        const u64 m = 128;
        u64 q = 1;
        u64 r = 1;
        while (d == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
            for (u64 k = 0; k < r && d == 1; k += m) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = (mulmod(y, y, n) + c) % n;
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = (u64)gcd64((i64)q, (i64)n);
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            do {
                ys = (mulmod(ys, ys, n) + c) % n;
                d = (u64)gcd64((i64)(x > ys ? x - ys : ys - x), (i64)n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::vector<std::pair<u64, int>> out;
    if (n <= 1) return out;
    for (u64 p : {2ull, 3ull, 5ull}) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) n /= p, ++e;
            out.push_back({p, e});
        }
    }
    // wheel over 7, 11, 13, ... up to 1e6, then rho on what is left
    for (u64 p = 7; p <= 1000000 && p * p <= n; p += 2) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) n /= p, ++e;
            out.push_back({p, e});
        }
    }
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            bool merged = false;
            for (auto& [p, e] : out)
                if (p == m) {
                    ++e;
                    merged = true;
                    break;
                }
            if (!merged) out.push_back({m, 1});
            continue;
        }
        u64 d = pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: n must be odd and positive");
    a %= n;
    if (a < 0) a += n;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

std::optional<u64> sqrt_mod_p(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if ((p & 3) == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) q >>= 1, ++s;
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        u64 b = powmod(c, 1ull << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (n % p == 0) n /= p, ++v;
    return v;
}

u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = (u64)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
    return r;
}

std::optional<i64> exact_cbrt(i64 n) {
    bool neg = n < 0;
    u64 m = neg ? (u64)(-(n + 1)) + 1 : (u64)n;
    i64 r = (i64)std::llround(std::cbrt((double)m));
    for (i64 c = std::max<i64>(0, r - 2); c <= r + 2; ++c) {
        if ((u64)c * c * c == m) return neg ? -c : c;
    }
    return std::nullopt;
}

i64 kfree_kernel(i64 n, int k) {
    if (n == 0) throw std::invalid_argument("kfree_kernel of zero");
    i64 sign = n < 0 ? -1 : 1;
    u64 m = (u64)(n < 0 ? -n : n);
    i64 out = sign;
    for (auto [p, e] : factor_u64(m)) {
        int r = e % k;
        for (int i = 0; i < r; ++i) out *= (i64)p;
    }
    return out;
}

bool is_squarefree(i64 n) {
    if (n == 0) return false;
    u64 m = (u64)(n < 0 ? -n : n);
    for (auto [p, e] : factor_u64(m))
        if (e > 1) return false;
    return true;
}

u64 sqrt_mod_pk(u64 a, u64 p, int k, u64 pk) {
    auto r0 = sqrt_mod_p(a % p, p);
    if (!r0) throw std::invalid_argument("sqrt_mod_pk: not a residue");
    u64 r = *r0;
    u64 mod = p;
    while (mod < pk) {
        u64 next = mod * mod;
        if (next > pk || next / mod != mod) next = pk;
        if (next > pk) next = pk;
        // f(r) = r^2 - a; lift r -> r - f(r)/(2r) mod next.
        // 2r is a unit since p is odd and p does not divide a.
        u64 fr = ((u128)r * r % next + next - a % next) % next;
        u64 t = (2 * r) % next;
        // extended Euclid inverse
        i64 x0 = 1, x1 = 0;
        i64 a0 = (i64)t, a1 = (i64)next;
        while (a1) {
            i64 q = a0 / a1;
            a0 -= q * a1;
            std::swap(a0, a1);
            x0 -= q * x1;
            std::swap(x0, x1);
        }
        i64 inv = x0 % (i64)next;
        if (inv < 0) inv += (i64)next;
        r = (r + next - mulmod(fr, (u64)inv, next)) % next;
        mod = next;
        if (mod == pk) break;
    }
    return r % pk;
}

u64 upow(u64 p, int k) {
    u64 r = 1;
    while (k--) r *= p;
    return r;
}

}  // namespace cdlab::nt
