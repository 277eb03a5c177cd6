#include "cdlab/gf3.hpp"

namespace cdlab::gf3 {

int row_reduce(Mat& m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        std::uint8_t piv = m.at(rank, col);
        if (piv == 2)
            for (int j = 0; j < m.cols; ++j) m.at(rank, j) = mul(m.at(rank, j), 2);
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            std::uint8_t f = m.at(r, col);
            if (!f) continue;
            for (int j = 0; j < m.cols; ++j) m.at(r, j) = sub(m.at(r, j), mul(f, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

std::vector<Vec> kernel(Mat m) {
    int n = m.cols;
    row_reduce(m);
    std::vector<int> pivot_of_col(n, -1);
    int r = 0;
    for (int c = 0; c < n && r < m.rows; ++c) {
        if (m.at(r, c)) {
            pivot_of_col[c] = r;
            ++r;
        }
    }
    std::vector<Vec> basis;
    for (int c = 0; c < n; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        Vec v(n, 0);
        v[c] = 1;
        for (int c2 = 0; c2 < n; ++c2) {
            int pr = pivot_of_col[c2];
            if (pr >= 0) v[c2] = neg(m.at(pr, c));
        }
        basis.push_back(v);
    }
    return basis;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vecs) {
    if (vecs.empty()) return {};
    int n = (int)vecs[0].size();
    Mat m((int)vecs.size(), n);
    for (int i = 0; i < (int)vecs.size(); ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = vecs[i][j] % 3;
    int rank = row_reduce(m);
    std::vector<Vec> out;
    for (int i = 0; i < rank; ++i) out.push_back(Vec(m.a.begin() + (size_t)i * n, m.a.begin() + (size_t)(i + 1) * n));
    return out;
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) {
    std::vector<Vec> all = basis;
    auto before = span_basis(all).size();
    all.push_back(v);
    return span_basis(all).size() == before;
}

std::vector<Vec> annihilator(const std::vector<Vec>& span, int dim) {
    Mat m((int)span.size(), dim);
    for (int i = 0; i < (int)span.size(); ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) = span[i][j] % 3;
    return kernel(m);
}

}  // namespace cdlab::gf3
