#pragma once

#include <cstdint>
#include <vector>

namespace cdlab::gf3 {

using Vec = std::vector<std::uint8_t>;  // entries in {0,1,2}

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return (a + b) % 3; }
inline std::uint8_t sub(std::uint8_t a, std::uint8_t b) { return (a + 3 - b) % 3; }
inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) { return (a * b) % 3; }
inline std::uint8_t neg(std::uint8_t a) { return (3 - a) % 3; }
inline std::uint8_t inv(std::uint8_t a) { return a; }  // 1 and 2 are self-inverse

// Dense row-major matrix over F_3.
struct Mat {
    int rows = 0, cols = 0;
    Vec a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}
    std::uint8_t& at(int i, int j) { return a[(size_t)i * cols + j]; }
    std::uint8_t at(int i, int j) const { return a[(size_t)i * cols + j]; }
};

// Row-reduces in place; returns the rank.
int row_reduce(Mat& m);

// Basis of the right kernel {x : M x = 0}, each vector of length cols.
std::vector<Vec> kernel(Mat m);

// Basis of the subspace spanned by the given vectors.
std::vector<Vec> span_basis(const std::vector<Vec>& vecs);

// True iff v lies in the span of basis (basis need not be reduced).
bool in_span(const std::vector<Vec>& basis, const Vec& v);

// Basis of the annihilator {f : f . s = 0 for all s in span} under the
// standard dot product.
std::vector<Vec> annihilator(const std::vector<Vec>& span, int dim);

}  // namespace cdlab::gf3
