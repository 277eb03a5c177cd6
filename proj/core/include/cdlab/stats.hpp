#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cdlab/selmer.hpp"

namespace cdlab::stats {

// alpha_0 = prod_{k>=0} (1 - 3^{-2k-1}), truncated once the tail is below tol.
double alpha0(double tol = 1e-12);

// The twist-family distribution law at dimension r (within one parity class):
// alpha_0 * 3^{-r(r-1)/2} * prod_{k=1}^r (1 - 3^{-k})^{-1}.
double predicted_density(int r);

struct DensityCorollaries {
    double not_sum;          // alpha0 / 2
    double conditional_sum;  // predicted_density(1) / 2
};
DensityCorollaries density_corollaries();

// P(kernel dim = r) for a uniform t x t alternating matrix over F_3, exact.
// Parity mismatch r != t mod 2 gives exactly 0.
mpq_class p_alt_kernel(int r, int t);

// Monte Carlo counterpart: counts[r] over `trials` samples; deterministic in
// the seed.
std::vector<std::int64_t> sample_alt_kernel(int t, std::int64_t trials, std::uint64_t seed);

// Exhaustive kernel-dimension counts over all 3^(t(t-1)/2) alternating
// matrices (test oracle; t <= 5 or so).
std::vector<std::int64_t> enumerate_alt_kernel(int t);

struct SweepOptions {
    int threads = 1;
    std::string cache_path;  // empty: no cache
    bool recompute = false;
    std::uint64_t seed = 0;
    selmer::DescentOptions descent;
};

struct SweepResult {
    std::vector<selmer::DescentReport> records;  // index n-1
    std::string histogram_csv;                   // d,n_max,w,r3_hi,count,fraction
    double mean_dim_mu3 = 0;                     // blow-up statistic over all n
};

SweepResult sweep(std::int64_t d, std::int64_t n_max, const SweepOptions& opt);

}  // namespace cdlab::stats
