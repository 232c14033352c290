#pragma once

#include "levyid/least_squares.hpp"
#include "levyid/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace levyid {

using Support = std::vector<Eigen::Index>;

/// Regression data [A | B] split into cross-validation folds, each fold held
/// as a compressed QR factor. Row j goes to fold j mod folds.
///
/// Columns 0..K-1 are basis values, K..K+p-1 the right-hand sides.
class FoldedSystem {
public:
    FoldedSystem(Eigen::Index basis_count, Eigen::Index rhs_count, int folds);

    static FoldedSystem from_dense(const Matrix& A, const Matrix& B, int folds);

    void add_row(std::size_t row_index, std::span<const double> basis_and_rhs);

    int folds() const noexcept { return static_cast<int>(parts_.size()); }
    Eigen::Index basis_count() const noexcept { return basis_count_; }
    Eigen::Index rhs_count() const noexcept { return rhs_count_; }
    std::size_t rows(int fold) const { return parts_[static_cast<std::size_t>(fold)].rows_seen(); }
    std::size_t total_rows() const;

    /// Compressed factor over every fold except `excluded` (-1 keeps all).
    Matrix factor(int excluded = -1) const;
    Matrix fold_factor(int fold) const { return parts_[static_cast<std::size_t>(fold)].r(); }

    /// Least-squares fit of right-hand side `rhs` on the `support` columns,
    /// using `factor` as produced above. Coefficients outside the support are 0.
    LeastSquaresResult fit(const Matrix& factor, Eigen::Index rhs, const Support& support) const;

    /// ||A c - b_rhs||^2 over the rows compressed in `factor`.
    double residual_ss(const Matrix& factor, Eigen::Index rhs, const Vector& coeffs) const;

private:
    Eigen::Index basis_count_;
    Eigen::Index rhs_count_;
    std::vector<QrAccumulator> parts_;
};

struct CvCandidate {
    Support support;
    std::vector<double> thresholds;  // grid values that produced this support
    double score = 0.0;              // mean held-out mean squared residual
    double score_se = 0.0;           // standard error of the fold-wise gap to the best score
};

struct CvReport {
    std::vector<CvCandidate> candidates;
    std::size_t best = 0;      // lowest score
    std::size_t selected = 0;  // sparsest within one standard error of best
};

struct SparseFit {
    Vector coefficients;
    Support support;
    CvReport report;
    std::vector<std::string> warnings;
};

/// 25 log-spaced relative thresholds from 1e-4 to 1.
std::vector<double> default_threshold_grid();

/// Sequential hard thresholding with cross-validated threshold choice.
///
/// For each tau, coefficients with |c_k| <= tau * max|c| are zeroed and the
/// rest refit, until the support stops changing; tau = 1 therefore yields
/// the empty model. Each distinct support is scored by K-fold held-out
/// residual, and the sparsest support within one standard error of the best
/// is refit on all data. The standard error is that of the per-fold score
/// difference to the best candidate.
SparseFit sparsify_cv(const FoldedSystem& system, Eigen::Index rhs, const Vector& dense_solution,
                      const std::vector<double>& threshold_grid);

SparseFit sparsify_cv(const Matrix& A, const Vector& B, const Vector& dense_solution, int folds,
                      const std::vector<double>& threshold_grid);

}  // namespace levyid
