#pragma once

#include "levyid/dictionary.hpp"
#include "levyid/jump_estimator.hpp"
#include "levyid/sde.hpp"
#include "levyid/sparsify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace levyid {

/// Pairs whose increment norm is below epsilon, in original order.
struct FilteredDataset {
    RowMatrix Z_hat;
    RowMatrix X_hat;
    std::size_t M_hat = 0;
    std::size_t M = 0;
    double epsilon = 0.0;
    double h = 0.0;

    int n() const noexcept { return static_cast<int>(Z_hat.cols()); }
    double retention() const noexcept { return static_cast<double>(M_hat) / static_cast<double>(M); }
};

FilteredDataset filter_small_increments(const PairDataset& data, double epsilon);

/// Second moment of the jumps smaller than epsilon, per unit time:
/// S_ij = sigma^-n int_{|y|<eps} y_i y_j W(y / sigma) dy. Diagonal for a
/// rotationally symmetric kernel.
struct BiasCorrection {
    Matrix S;
};

BiasCorrection bias_correction(double alpha_hat, double sigma_hat, double epsilon, int n);

struct SparsifyOptions {
    bool enabled = true;
    int folds = 5;
    std::vector<double> thresholds = default_threshold_grid();

    void validate() const;
};

/// Dense least-squares drift coefficients, one row per component (n x K).
Matrix estimate_drift(const FilteredDataset& fd, const Dictionary& dict);

/// Dense diffusion coefficients, one row per pair in diffusion_pairs(n).
Matrix estimate_diffusion(const FilteredDataset& fd, const Dictionary& dict, const BiasCorrection& corr);

struct ComponentDiagnostics {
    std::string label;           // "b1", "a12", ...
    double residual_rms = 0.0;   // dense fit, per row
    std::optional<CvReport> cv;  // when sparsified
};

struct Diagnostics {
    std::size_t M = 0;
    std::size_t M_hat = 0;
    double retention = 0.0;
    double condition_number = 0.0;  // of the filtered design matrix
    Eigen::Index rank = 0;
    bool rank_deficient = false;
    double min_diffusion_eigenvalue = 0.0;  // of the fitted a(x) over sampled rows
    std::vector<ComponentDiagnostics> components;
    std::vector<std::string> warnings;
};

struct IdentifiedSystem {
    int n = 0;
    double alpha_hat = 0.0;
    double sigma_hat = 0.0;
    std::optional<JumpEstimate> jump;  // empty when no increment reached epsilon
    BiasCorrection correction;
    Dictionary dictionary;
    Matrix drift_coeffs;       // n x K, sparsified when enabled
    Matrix diffusion_coeffs;   // pairs x K, sparsified when enabled
    Matrix drift_dense;
    Matrix diffusion_dense;
    std::vector<std::pair<int, int>> diffusion_index;
    Diagnostics diagnostics;

    double drift(int i, std::span<const double> x) const;
    double diffusion(int i, int j, std::span<const double> x) const;
};

struct IdentifyOptions {
    AnnulusConfig annulus;
    SparsifyOptions sparsify;
    std::size_t diagnostic_points = 10000;
};

/// Jump estimate -> small-increment filter -> bias correction -> drift and
/// diffusion regressions -> sparsification. Errors carry the stage name.
IdentifiedSystem identify(const PairDataset& data, const Dictionary& dict, const IdentifyOptions& options = {});

}  // namespace levyid
