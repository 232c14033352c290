#include "levyid/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace levyid {

FoldedSystem::FoldedSystem(Eigen::Index basis_count, Eigen::Index rhs_count, int folds)
    : basis_count_(basis_count), rhs_count_(rhs_count) {
    if (basis_count < 1 || rhs_count < 1) {
        throw std::invalid_argument("folded system needs at least one basis and one rhs column");
    }
    if (folds < 1) throw std::invalid_argument("fold count must be positive");
    parts_.reserve(static_cast<std::size_t>(folds));
    for (int f = 0; f < folds; ++f) parts_.emplace_back(basis_count + rhs_count);
}

FoldedSystem FoldedSystem::from_dense(const Matrix& A, const Matrix& B, int folds) {
    if (A.rows() != B.rows()) throw std::invalid_argument("A and B row counts differ");
    if (!A.allFinite() || !B.allFinite()) throw std::invalid_argument("non-finite regression data");
    FoldedSystem system(A.cols(), B.cols(), folds);
    std::vector<double> row(static_cast<std::size_t>(A.cols() + B.cols()));
    for (Eigen::Index j = 0; j < A.rows(); ++j) {
        for (Eigen::Index k = 0; k < A.cols(); ++k) row[static_cast<std::size_t>(k)] = A(j, k);
        for (Eigen::Index r = 0; r < B.cols(); ++r) {
            row[static_cast<std::size_t>(A.cols() + r)] = B(j, r);
        }
        system.add_row(static_cast<std::size_t>(j), row);
    }
    return system;
}

void FoldedSystem::add_row(std::size_t row_index, std::span<const double> basis_and_rhs) {
    parts_[row_index % parts_.size()].add_row(basis_and_rhs);
}

std::size_t FoldedSystem::total_rows() const {
    std::size_t total = 0;
    for (const auto& p : parts_) total += p.rows_seen();
    return total;
}

Matrix FoldedSystem::factor(int excluded) const {
    std::vector<Matrix> factors;
    for (int f = 0; f < folds(); ++f) {
        if (f != excluded) factors.push_back(parts_[static_cast<std::size_t>(f)].r());
    }
    return stack_and_compress(factors, basis_count_ + rhs_count_);
}

LeastSquaresResult FoldedSystem::fit(const Matrix& factor, Eigen::Index rhs, const Support& support) const {
    LeastSquaresResult out;
    out.solution = Vector::Zero(basis_count_);
    if (support.empty()) return out;
    Matrix a(factor.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t s = 0; s < support.size(); ++s) {
        a.col(static_cast<Eigen::Index>(s)) = factor.col(support[s]);
    }
    const Vector b = factor.col(basis_count_ + rhs);
    auto sub = least_squares_solve_detailed(a, b);
    for (std::size_t s = 0; s < support.size(); ++s) {
        out.solution(support[s]) = sub.solution(static_cast<Eigen::Index>(s));
    }
    out.rank = sub.rank;
    out.rank_deficient = sub.rank_deficient;
    return out;
}

double FoldedSystem::residual_ss(const Matrix& factor, Eigen::Index rhs, const Vector& coeffs) const {
    Vector v = Vector::Zero(basis_count_ + rhs_count_);
    v.head(basis_count_) = coeffs;
    v(basis_count_ + rhs) = -1.0;
    return (factor * v).squaredNorm();
}

std::vector<double> default_threshold_grid() {
    std::vector<double> grid(25);
    for (int i = 0; i < 25; ++i) grid[static_cast<std::size_t>(i)] = std::pow(10.0, -4.0 + i / 6.0);
    grid.back() = 1.0;
    return grid;
}

namespace {

Support full_support(const Vector& c) {
    Support s;
    for (Eigen::Index k = 0; k < c.size(); ++k) s.push_back(k);
    return s;
}

Support threshold_path(const FoldedSystem& system, const Matrix& factor, Eigen::Index rhs,
                       const Vector& dense, double tau) {
    Support support = full_support(dense);
    Vector c = dense;
    for (Eigen::Index iter = 0; iter <= dense.size(); ++iter) {
        double cmax = 0.0;
        for (auto k : support) cmax = std::max(cmax, std::abs(c(k)));
        Support kept;
        for (auto k : support) {
            if (std::abs(c(k)) > tau * cmax) kept.push_back(k);
        }
        if (kept == support) break;
        support = std::move(kept);
        if (support.empty()) break;
        c = system.fit(factor, rhs, support).solution;
    }
    return support;
}

}  // namespace

SparseFit sparsify_cv(const FoldedSystem& system, Eigen::Index rhs, const Vector& dense_solution,
                      const std::vector<double>& threshold_grid) {
    if (system.folds() < 2) throw std::invalid_argument("cross validation needs at least 2 folds");
    if (dense_solution.size() != system.basis_count()) {
        throw std::invalid_argument("dense solution length does not match the basis count");
    }
    if (rhs < 0 || rhs >= system.rhs_count()) throw std::invalid_argument("rhs index out of range");
    if (threshold_grid.empty()) throw std::invalid_argument("threshold grid is empty");
    for (std::size_t i = 0; i < threshold_grid.size(); ++i) {
        if (!(threshold_grid[i] >= 0.0) || (i > 0 && threshold_grid[i] <= threshold_grid[i - 1])) {
            throw std::invalid_argument("threshold grid must be non-negative and ascending");
        }
    }

    const Matrix full = system.factor();
    SparseFit out;

    std::map<Support, std::size_t> seen;
    for (double tau : threshold_grid) {
        Support s = threshold_path(system, full, rhs, dense_solution, tau);
        auto [it, inserted] = seen.emplace(s, out.report.candidates.size());
        if (inserted) out.report.candidates.push_back({std::move(s), {}, 0.0, 0.0});
        out.report.candidates[it->second].thresholds.push_back(tau);
    }

    std::vector<int> used_folds;
    std::vector<Matrix> train;
    std::vector<Matrix> held;
    for (int f = 0; f < system.folds(); ++f) {
        if (system.rows(f) == 0) continue;
        used_folds.push_back(f);
        train.push_back(system.factor(f));
        held.push_back(system.fold_factor(f));
    }
    if (used_folds.size() < 2) {
        throw std::invalid_argument("cross validation needs at least 2 non-empty folds");
    }

    auto& candidates = out.report.candidates;
    std::vector<std::vector<double>> fold_mse(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < used_folds.size(); ++i) {
            const Vector coeffs = system.fit(train[i], rhs, candidates[c].support).solution;
            const double mse = system.residual_ss(held[i], rhs, coeffs) /
                               static_cast<double>(system.rows(used_folds[i]));
            fold_mse[c].push_back(mse);
            total += mse;
        }
        candidates[c].score = total / static_cast<double>(used_folds.size());
    }

    std::size_t best = 0;
    for (std::size_t c = 1; c < candidates.size(); ++c) {
        if (candidates[c].score < candidates[best].score) best = c;
    }
    out.report.best = best;

    const auto folds_used = static_cast<double>(used_folds.size());
    std::size_t selected = best;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < used_folds.size(); ++i) mean += fold_mse[c][i] - fold_mse[best][i];
        mean /= folds_used;
        double var = 0.0;
        for (std::size_t i = 0; i < used_folds.size(); ++i) {
            const double d = fold_mse[c][i] - fold_mse[best][i] - mean;
            var += d * d;
        }
        var /= folds_used - 1.0;
        candidates[c].score_se = std::sqrt(var / folds_used);
        if (mean > candidates[c].score_se) continue;
        const auto& cur = candidates[selected];
        if (candidates[c].support.size() < cur.support.size() ||
            (candidates[c].support.size() == cur.support.size() && candidates[c].score < cur.score)) {
            selected = c;
        }
    }
    out.report.selected = selected;
    out.support = candidates[selected].support;

    if (out.support == full_support(dense_solution)) {
        out.coefficients = dense_solution;
    } else {
        out.coefficients = system.fit(full, rhs, out.support).solution;
    }
    if (out.support.empty()) out.warnings.push_back("all coefficients thresholded to zero");
    return out;
}

SparseFit sparsify_cv(const Matrix& A, const Vector& B, const Vector& dense_solution, int folds,
                      const std::vector<double>& threshold_grid) {
    if (folds < 2) throw std::invalid_argument("cross validation needs at least 2 folds");
    Matrix rhs(B.size(), 1);
    rhs.col(0) = B;
    return sparsify_cv(FoldedSystem::from_dense(A, rhs, folds), 0, dense_solution, threshold_grid);
}

}  // namespace levyid
