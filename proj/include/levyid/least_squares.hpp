#pragma once

#include "levyid/types.hpp"

#include <cstddef>
#include <span>

namespace levyid {

struct LeastSquaresResult {
    Vector solution;
    Eigen::Index rank = 0;
    bool rank_deficient = false;
};

/// Minimizer of ||A c - b||_2 via a complete orthogonal decomposition; the
/// minimum-norm minimizer when A has dependent columns. Throws
/// std::invalid_argument on non-finite input.
LeastSquaresResult least_squares_solve_detailed(const Matrix& A, const Vector& b);
Vector least_squares_solve(const Matrix& A, const Vector& b);

/// Streaming orthogonal compression of a tall matrix W. Rows arrive one at a
/// time or in blocks; the accumulator keeps an upper-trapezoidal R with
/// W = Q R for some Q with orthonormal columns, so any least-squares problem
/// on a column subset of W can be solved on the matching columns of R.
class QrAccumulator {
public:
    explicit QrAccumulator(Eigen::Index cols, Eigen::Index buffer_rows = 1024);

    void add_row(std::span<const double> row);
    void add_rows(const Matrix& rows);
    void merge(const QrAccumulator& other);

    Eigen::Index cols() const noexcept { return cols_; }
    std::size_t rows_seen() const noexcept { return rows_seen_; }

    /// Compressed factor, min(rows_seen, cols) x cols.
    Matrix r() const;

private:
    void flush();
    static Matrix compress(const Matrix& stacked, Eigen::Index cols);

    Eigen::Index cols_;
    Matrix r_;
    Matrix buffer_;
    Eigen::Index buffered_ = 0;
    std::size_t rows_seen_ = 0;
};

/// Stacks the given factors and re-compresses them.
Matrix stack_and_compress(std::span<const Matrix> factors, Eigen::Index cols);

}  // namespace levyid
