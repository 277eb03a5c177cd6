#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cdlab::trilinear {

enum class Mode { ones, random_unit };

std::string mode_name(Mode m);

struct SumReport {
    double H1 = 0, H2 = 0, H3 = 0;  // H3 = 0 for the bilinear sum
    Mode mode = Mode::ones;
    std::uint64_t seed = 0;
    std::int64_t raw_sum = 0;
    std::int64_t nonzero_terms = 0;
    double normalized = 0;  // |raw_sum| / max(1, nonzero_terms)
};

// Sum of a12 a13 a23 [d1,d2,d3] over |d_i| < H_i (non-squarefree d_i count
// as zero terms).  Budget: H1*H2*H3 <= 1e8.
SumReport trilinear_sum(double H1, double H2, double H3, Mode mode, std::uint64_t seed);

// Sum of a1(d1) a2(d2) (d1|d2) with the even-denominator-is-zero convention.
// Budget: H1*H2 <= 1e8.
SumReport bilinear_jacobi_sum(double H1, double H2, Mode mode, std::uint64_t seed);

// Test hook: same engines with arbitrary coefficient functions.
using Coeff2 = std::function<int(std::int64_t, std::int64_t)>;
SumReport trilinear_sum_with(double H1, double H2, double H3, const Coeff2& a12, const Coeff2& a13,
                             const Coeff2& a23);

// One cube-box report per H.
std::vector<SumReport> decay_report(const std::vector<double>& Hs, Mode mode, std::uint64_t seed);

// CSV: H1,H2,H3,mode,seed,raw_sum,nonzero_terms,normalized
std::string to_csv(const std::vector<SumReport>& reports);

}  // namespace cdlab::trilinear
