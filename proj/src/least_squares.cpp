#include "levyid/least_squares.hpp"

#include <algorithm>
#include <stdexcept>

namespace levyid {

LeastSquaresResult least_squares_solve_detailed(const Matrix& A, const Vector& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("least squares: A and b row counts differ");
    if (!A.allFinite() || !b.allFinite()) {
        throw std::invalid_argument("least squares: non-finite input");
    }
    LeastSquaresResult out;
    if (A.cols() == 0) {
        out.solution = Vector::Zero(0);
        return out;
    }
    if (A.rows() == 0) {
        out.solution = Vector::Zero(A.cols());
        out.rank_deficient = true;
        return out;
    }
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
    out.rank = cod.rank();
    out.rank_deficient = out.rank < A.cols();
    out.solution = cod.solve(b);
    return out;
}

Vector least_squares_solve(const Matrix& A, const Vector& b) {
    return least_squares_solve_detailed(A, b).solution;
}

QrAccumulator::QrAccumulator(Eigen::Index cols, Eigen::Index buffer_rows)
    : cols_(cols), r_(0, cols), buffer_(std::max<Eigen::Index>(buffer_rows, cols), cols) {
    if (cols < 1) throw std::invalid_argument("accumulator needs at least one column");
}

void QrAccumulator::add_row(std::span<const double> row) {
    if (static_cast<Eigen::Index>(row.size()) != cols_) {
        throw std::invalid_argument("accumulator row has the wrong width");
    }
    for (Eigen::Index c = 0; c < cols_; ++c) buffer_(buffered_, c) = row[static_cast<std::size_t>(c)];
    ++buffered_;
    ++rows_seen_;
    if (buffered_ == buffer_.rows()) flush();
}

void QrAccumulator::add_rows(const Matrix& rows) {
    if (rows.cols() != cols_) throw std::invalid_argument("accumulator block has the wrong width");
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        buffer_.row(buffered_) = rows.row(i);
        ++buffered_;
        ++rows_seen_;
        if (buffered_ == buffer_.rows()) flush();
    }
}

void QrAccumulator::merge(const QrAccumulator& other) {
    if (other.cols_ != cols_) throw std::invalid_argument("cannot merge accumulators of different width");
    const Matrix other_r = other.r();
    flush();
    Matrix stacked(r_.rows() + other_r.rows(), cols_);
    stacked << r_, other_r;
    r_ = compress(stacked, cols_);
    rows_seen_ += other.rows_seen_;
}

Matrix QrAccumulator::compress(const Matrix& stacked, Eigen::Index cols) {
    if (stacked.rows() == 0) return Matrix(0, cols);
    Eigen::HouseholderQR<Matrix> qr(stacked);
    const Eigen::Index keep = std::min(stacked.rows(), cols);
    return qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
}

void QrAccumulator::flush() {
    if (buffered_ == 0) return;
    Matrix stacked(r_.rows() + buffered_, cols_);
    stacked << r_, buffer_.topRows(buffered_);
    r_ = compress(stacked, cols_);
    buffered_ = 0;
}

Matrix QrAccumulator::r() const {
    if (buffered_ == 0) return r_;
    Matrix stacked(r_.rows() + buffered_, cols_);
    stacked << r_, buffer_.topRows(buffered_);
    return compress(stacked, cols_);
}

Matrix stack_and_compress(std::span<const Matrix> factors, Eigen::Index cols) {
    Eigen::Index rows = 0;
    for (const auto& f : factors) rows += f.rows();
    Matrix stacked(rows, cols);
    Eigen::Index at = 0;
    for (const auto& f : factors) {
        stacked.middleRows(at, f.rows()) = f;
        at += f.rows();
    }
    if (rows == 0) return Matrix(0, cols);
    Eigen::HouseholderQR<Matrix> qr(stacked);
    const Eigen::Index keep = std::min(rows, cols);
    return qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
}

}  // namespace levyid
