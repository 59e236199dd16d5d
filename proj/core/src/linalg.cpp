#include "voapf/linalg.hpp"

namespace voapf {

MatQ MatQ::identity(size_t n) {
    MatQ m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatQ MatQ::transposed() const {
    MatQ t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

MatQ MatQ::operator*(const MatQ& o) const {
    require(cols_ == o.rows_, "MatQ: dimension mismatch in product");
    MatQ out(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (is_zero(a)) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const Rat& b = o.at(k, j);
                if (!is_zero(b)) out.at(i, j) += a * b;
            }
        }
    return out;
}

std::vector<size_t> MatQ::rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
        size_t sel = row;
        while (sel < rows_ && is_zero(at(sel, col))) ++sel;
        if (sel == rows_) continue;
        if (sel != row)
            for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
        Rat inv = Rat(1) / at(row, col);
        for (size_t j = col; j < cols_; ++j) at(row, j) *= inv;
        for (size_t i = 0; i < rows_; ++i) {
            if (i == row || is_zero(at(i, col))) continue;
            Rat f = at(i, col);
            for (size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t MatQ::rank() const {
    MatQ copy = *this;
    return copy.rref().size();
}

Rat MatQ::det() const {
    require(rows_ == cols_, "MatQ::det: not square");
    MatQ m = *this;
    Rat d = 1;
    for (size_t col = 0; col < cols_; ++col) {
        size_t sel = col;
        while (sel < rows_ && is_zero(m.at(sel, col))) ++sel;
        if (sel == rows_) return 0;
        if (sel != col) {
            for (size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Rat inv = Rat(1) / m.at(col, col);
        for (size_t i = col + 1; i < rows_; ++i) {
            if (is_zero(m.at(i, col))) continue;
            Rat f = m.at(i, col) * inv;
            for (size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

MatQ MatQ::inverse() const {
    require(rows_ == cols_, "MatQ::inverse: not square");
    MatQ aug(rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    auto pivots = aug.rref();
    if (pivots.size() != rows_ || pivots.back() >= cols_)
        throw not_invertible_error("MatQ: singular matrix");
    MatQ inv(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

std::vector<std::vector<Rat>> MatQ::nullspace() const {
    MatQ m = *this;
    std::vector<size_t> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Rat>> basis;
    for (size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> v(cols_, Rat(0));
        v[free_col] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rat> MatQ::solve(const std::vector<Rat>& b, bool& ok, bool& unique) const {
    require(b.size() == rows_, "MatQ::solve: rhs size mismatch");
    MatQ aug(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) {
        ok = false;
        unique = false;
        return {};
    }
    ok = true;
    unique = pivots.size() == cols_;
    std::vector<Rat> x(cols_, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
}

} // namespace voapf
