#include "cdlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <atomic>
#include <map>
#include <thread>

#include "cdlab/cache.hpp"
#include "cdlab/errors.hpp"
#include "cdlab/gf3.hpp"
#include "cdlab/rng.hpp"

namespace cdlab::stats {

double alpha0(double tol) {
    if (tol < 1e-12) tol = 1e-12;
    double prod = 1.0;
    for (int k = 0; k < 200; ++k) {
        double f = std::pow(3.0, -(2.0 * k + 1.0));
        prod *= (1.0 - f);
        if (f < tol / 4) break;
    }
    return prod;
}

double predicted_density(int r) {
    if (r < 0) throw std::invalid_argument("predicted_density: r must be >= 0");
    double v = alpha0() * std::pow(3.0, -0.5 * r * (r - 1));
    for (int k = 1; k <= r; ++k) v /= (1.0 - std::pow(3.0, -k));
    return v;
}

DensityCorollaries density_corollaries() { return {alpha0() / 2, predicted_density(1) / 2}; }

namespace {

mpz_class zpow(unsigned long b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

// number of nondegenerate alternating forms on F_3^(2s): |GL_2s| / |Sp_2s|
mpq_class nondeg_alt_count(int s) {
    if (s == 0) return 1;
    int m = 2 * s;
    mpz_class gl = zpow(3, (unsigned long)m * (m - 1) / 2);
    for (int i = 1; i <= m; ++i) gl *= zpow(3, i) - 1;
    mpz_class sp = zpow(3, (unsigned long)s * s);
    for (int i = 1; i <= s; ++i) sp *= zpow(3, 2 * i) - 1;
    return mpq_class(gl) / mpq_class(sp);
}

mpq_class gauss_binom(int n, int k) {
    mpq_class r = 1;
    for (int i = 0; i < k; ++i) r *= mpq_class(zpow(3, n - i) - 1) / mpq_class(zpow(3, k - i) - 1);
    return r;
}

}  // namespace

mpq_class p_alt_kernel(int r, int t) {
    if (r < 0 || t < 0 || r > t) throw std::invalid_argument("p_alt_kernel: need 0 <= r <= t");
    if ((t - r) % 2 != 0) return 0;  // alternating matrices have even rank
    int s = (t - r) / 2;
    mpq_class count = gauss_binom(t, 2 * s) * nondeg_alt_count(s);
    mpq_class total = mpq_class(zpow(3, (unsigned long)t * (t - 1) / 2));
    mpq_class p = count / total;
    p.canonicalize();
    return p;
}

namespace {

int kernel_dim_alt(const gf3::Mat& m) {
    gf3::Mat c = m;
    int rank = gf3::row_reduce(c);
    return m.cols - rank;
}

}  // namespace

std::vector<std::int64_t> sample_alt_kernel(int t, std::int64_t trials, std::uint64_t seed) {
    if (t < 1 || t > 64) throw std::invalid_argument("sample_alt_kernel: t out of range");
    if (trials < 1 || trials > 10'000'000) throw resource_limit_error("sample_alt_kernel: trials out of range");
    std::vector<std::int64_t> counts(t + 1, 0);
    Rng rng(seed);
    gf3::Mat m(t, t);
    for (std::int64_t it = 0; it < trials; ++it) {
        for (int i = 0; i < t; ++i) {
            m.at(i, i) = 0;
            for (int j = i + 1; j < t; ++j) {
                std::uint8_t v = (std::uint8_t)rng.trit();
                m.at(i, j) = v;
                m.at(j, i) = gf3::neg(v);
            }
        }
        ++counts[kernel_dim_alt(m)];
    }
    return counts;
}

std::vector<std::int64_t> enumerate_alt_kernel(int t) {
    if (t < 1 || t > 5) throw std::invalid_argument("enumerate_alt_kernel: t too large for exhaustion");
    int ncells = t * (t - 1) / 2;
    std::int64_t total = 1;
    for (int i = 0; i < ncells; ++i) total *= 3;
    std::vector<std::int64_t> counts(t + 1, 0);
    gf3::Mat m(t, t);
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        for (int i = 0; i < t; ++i)
            for (int j = i + 1; j < t; ++j) {
                std::uint8_t v = (std::uint8_t)(c % 3);
                c /= 3;
                m.at(i, j) = v;
                m.at(j, i) = gf3::neg(v);
            }
        ++counts[kernel_dim_alt(m)];
    }
    return counts;
}

SweepResult sweep(std::int64_t d, std::int64_t n_max, const SweepOptions& opt) {
    if (selmer::classify(d) == selmer::Side::generic) throw unsupported_error("sweep: generic twist");
    if (n_max < 1 || n_max > 100000) throw resource_limit_error("sweep: n_max out of range");

    SweepResult out;
    out.records.resize(n_max);
    std::vector<char> have(n_max + 1, 0);

    // cache pass
    cache::Store store;
    if (!opt.cache_path.empty()) {
        store = cache::read_store(opt.cache_path);
        if (!opt.recompute) {
            for (const auto& rec : store.records) {
                if (rec.d != d || rec.n < 1 || rec.n > n_max) continue;
                selmer::DescentReport r;
                r.params = selmer::TwistParams::make(rec.d, rec.n);
                r.dim_mu3 = rec.dim_mu3;
                r.dim_hom = rec.dim_hom;
                r.tam_exponent = rec.tam_exp;
                r.w = rec.w;
                r.r3_lower = rec.r3_lo;
                r.r3_upper = rec.r3_hi;
                r.parity_ok = true;  // cached records were certified when written
                out.records[rec.n - 1] = r;
                have[rec.n] = 1;
            }
        }
    }

    // compute the rest in parallel
    int nthreads = std::max(1, opt.threads);
    std::vector<std::thread> pool;
    std::atomic<std::int64_t> next{1};
    std::vector<std::string> errors(nthreads);
    auto worker = [&](int wid) {
        for (;;) {
            std::int64_t n = next.fetch_add(1);
            if (n > n_max) return;
            if (have[n]) continue;
            try {
                out.records[n - 1] = selmer::descent_report(d, n, opt.descent);
            } catch (const std::exception& e) {
                errors[wid] = "n=" + std::to_string(n) + ": " + e.what();
                return;
            }
        }
    };
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (!e.empty()) throw internal_error("sweep: " + e);

    // append newly computed records to the cache (single writer, in order)
    if (!opt.cache_path.empty()) {
        std::vector<cache::Record> fresh;
        for (std::int64_t n = 1; n <= n_max; ++n) {
            if (have[n] && !opt.recompute) continue;
            const auto& r = out.records[n - 1];
            fresh.push_back(cache::Record{1, d, n, r.dim_mu3, r.dim_hom, r.tam_exponent, r.w, r.r3_lower, r.r3_upper});
        }
        cache::append_records(opt.cache_path, fresh);
    }

    // histogram of r3_hi by root number
    std::map<std::pair<int, int>, std::int64_t> hist;
    double mu_sum = 0;
    for (const auto& r : out.records) {
        ++hist[{r.w, r.r3_upper}];
        mu_sum += r.dim_mu3;
    }
    out.mean_dim_mu3 = mu_sum / (double)n_max;

    std::ostringstream csv;
    csv << "# seed=" << opt.seed << " version=1\n";
    csv << "d,n_max,w,r3_hi,count,fraction\n";
    char buf[128];
    for (const auto& [key, count] : hist) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%d,%d,%lld,%.9g", (long long)d, (long long)n_max, key.first,
                      key.second, (long long)count, (double)count / (double)n_max);
        csv << buf << "\n";
    }
    out.histogram_csv = csv.str();
    return out;
}

}  // namespace cdlab::stats
