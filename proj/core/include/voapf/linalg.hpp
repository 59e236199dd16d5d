#ifndef VOAPF_LINALG_HPP
#define VOAPF_LINALG_HPP

#include <vector>

#include "voapf/rational.hpp"

namespace voapf {

// Small dense matrices over Q with exact Gaussian elimination. Sizes in this
// project stay in the low hundreds, so no fraction-free tricks are needed.
class MatQ {
  public:
    MatQ() : rows_(0), cols_(0) {}
    MatQ(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static MatQ identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rat& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    MatQ transposed() const;
    MatQ operator*(const MatQ& o) const;
    bool operator==(const MatQ& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    // in-place reduced row echelon form; returns pivot columns
    std::vector<size_t> rref();

    size_t rank() const;
    Rat det() const;

    // inverse of a square nonsingular matrix; throws not_invertible_error
    MatQ inverse() const;

    // basis of the right nullspace, one column vector per basis element
    std::vector<std::vector<Rat>> nullspace() const;

    // solve A x = b; ok=false when inconsistent. Minimal solution with free
    // variables set to zero. unique=true when the solution is unique.
    std::vector<Rat> solve(const std::vector<Rat>& b, bool& ok, bool& unique) const;

  private:
    size_t rows_, cols_;
    std::vector<Rat> data_;
};

} // namespace voapf

#endif
