#include "levyid/coefficient_estimator.hpp"

#include "levyid/models.hpp"
#include "levyid/stable.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyid {

FilteredDataset filter_small_increments(const PairDataset& data, double epsilon) {
    data.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("filter radius epsilon must be positive");
    std::vector<Eigen::Index> keep;
    keep.reserve(data.M());
    for (Eigen::Index j = 0; j < data.Z.rows(); ++j) {
        if ((data.X.row(j) - data.Z.row(j)).norm() < epsilon) keep.push_back(j);
    }
    if (keep.empty()) {
        throw std::domain_error("no continuous-part samples; epsilon too small or h too large");
    }
    FilteredDataset fd;
    fd.M = data.M();
    fd.M_hat = keep.size();
    fd.epsilon = epsilon;
    fd.h = data.h;
    fd.Z_hat.resize(static_cast<Eigen::Index>(keep.size()), data.n());
    fd.X_hat.resize(static_cast<Eigen::Index>(keep.size()), data.n());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        fd.Z_hat.row(static_cast<Eigen::Index>(r)) = data.Z.row(keep[r]);
        fd.X_hat.row(static_cast<Eigen::Index>(r)) = data.X.row(keep[r]);
    }
    return fd;
}

BiasCorrection bias_correction(double alpha_hat, double sigma_hat, double epsilon, int n) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(sigma_hat >= 0.0) || !std::isfinite(sigma_hat)) {
        throw std::invalid_argument("sigma_hat must be finite and non-negative");
    }
    BiasCorrection corr{Matrix::Zero(n, n)};
    if (sigma_hat == 0.0) return corr;
    if (!(alpha_hat > 0.0 && alpha_hat < 2.0)) {
        throw std::domain_error("bias correction needs 0 < alpha_hat < 2, got " + std::to_string(alpha_hat));
    }
    const double diag = unit_sphere_area(n) / n * std::pow(sigma_hat, alpha_hat) *
                        levy_kernel_constant(n, alpha_hat) * std::pow(epsilon, 2.0 - alpha_hat) /
                        (2.0 - alpha_hat);
    corr.S.diagonal().setConstant(diag);
    return corr;
}

void SparsifyOptions::validate() const {
    if (folds < 2) throw std::invalid_argument("sparsifier needs at least 2 folds");
    if (thresholds.empty()) throw std::invalid_argument("sparsifier threshold grid is empty");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 0.0) || (i > 0 && thresholds[i] <= thresholds[i - 1])) {
            throw std::invalid_argument("sparsifier thresholds must be non-negative and ascending");
        }
    }
}

namespace {

// Right-hand sides: drift components (optional) then diffusion pairs (optional).
FoldedSystem build_system(const FilteredDataset& fd, const Dictionary& dict, const BiasCorrection* corr,
                          bool with_drift, bool with_diffusion, int folds) {
    const int n = fd.n();
    if (dict.dimension() != n) throw std::invalid_argument("dictionary dimension does not match data");
    const auto pairs = diffusion_pairs(n);
    const auto k_count = dict.size();
    const std::size_t rhs_count = (with_drift ? static_cast<std::size_t>(n) : 0) +
                                  (with_diffusion ? pairs.size() : 0);
    FoldedSystem system(static_cast<Eigen::Index>(k_count), static_cast<Eigen::Index>(rhs_count), folds);

    const double scale = fd.retention() / fd.h;
    std::vector<double> row(k_count + rhs_count);
    std::vector<double> dx(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < fd.Z_hat.rows(); ++j) {
        std::span<const double> z(fd.Z_hat.row(j).data(), static_cast<std::size_t>(n));
        dict.evaluate_row(z, {row.data(), k_count});
        for (std::size_t k = 0; k < k_count; ++k) {
            if (!std::isfinite(row[k])) {
                throw std::domain_error("basis entry '" + dict.name(k) + "' is not finite at row " +
                                        std::to_string(j));
            }
        }
        for (int i = 0; i < n; ++i) {
            dx[static_cast<std::size_t>(i)] = fd.X_hat(j, i) - fd.Z_hat(j, i);
        }
        std::size_t at = k_count;
        if (with_drift) {
            for (int i = 0; i < n; ++i) row[at++] = scale * dx[static_cast<std::size_t>(i)];
        }
        if (with_diffusion) {
            for (const auto& [a, b] : pairs) {
                row[at++] = scale * dx[static_cast<std::size_t>(a)] * dx[static_cast<std::size_t>(b)] -
                            corr->S(a, b);
            }
        }
        system.add_row(static_cast<std::size_t>(j), row);
    }
    return system;
}

Support all_columns(Eigen::Index k) {
    Support s;
    for (Eigen::Index i = 0; i < k; ++i) s.push_back(i);
    return s;
}

Matrix dense_fit(const FoldedSystem& system, const Matrix& factor, LeastSquaresResult* info = nullptr) {
    Matrix out(system.rhs_count(), system.basis_count());
    const Support full = all_columns(system.basis_count());
    for (Eigen::Index r = 0; r < system.rhs_count(); ++r) {
        auto fit = system.fit(factor, r, full);
        out.row(r) = fit.solution.transpose();
        if (info) {
            info->rank = fit.rank;
            info->rank_deficient = fit.rank_deficient;
        }
    }
    return out;
}

void check_corr(const BiasCorrection& corr, int n) {
    if (corr.S.rows() != n || corr.S.cols() != n) {
        throw std::invalid_argument("bias correction dimension does not match data");
    }
}

}  // namespace

Matrix estimate_drift(const FilteredDataset& fd, const Dictionary& dict) {
    const auto system = build_system(fd, dict, nullptr, true, false, 1);
    return dense_fit(system, system.factor());
}

Matrix estimate_diffusion(const FilteredDataset& fd, const Dictionary& dict, const BiasCorrection& corr) {
    check_corr(corr, fd.n());
    const auto system = build_system(fd, dict, &corr, false, true, 1);
    return dense_fit(system, system.factor());
}

double IdentifiedSystem::drift(int i, std::span<const double> x) const {
    const auto row = drift_coeffs.row(i);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < row.size(); ++k) {
        if (row(k) != 0.0) sum += row(k) * dictionary.evaluate(static_cast<std::size_t>(k), x);
    }
    return sum;
}

double IdentifiedSystem::diffusion(int i, int j, std::span<const double> x) const {
    if (i > j) std::swap(i, j);
    for (std::size_t p = 0; p < diffusion_index.size(); ++p) {
        if (diffusion_index[p] == std::pair{i, j}) {
            const auto row = diffusion_coeffs.row(static_cast<Eigen::Index>(p));
            double sum = 0.0;
            for (Eigen::Index k = 0; k < row.size(); ++k) {
                if (row(k) != 0.0) sum += row(k) * dictionary.evaluate(static_cast<std::size_t>(k), x);
            }
            return sum;
        }
    }
    throw std::out_of_range("diffusion index out of range");
}

IdentifiedSystem identify(const PairDataset& data, const Dictionary& dict, const IdentifyOptions& options) {
    try {
        data.validate();
        options.annulus.validate();
        if (options.sparsify.enabled) options.sparsify.validate();
        if (dict.dimension() != data.n()) {
            throw std::invalid_argument("dictionary dimension " + std::to_string(dict.dimension()) +
                                        " does not match data dimension " + std::to_string(data.n()));
        }
    } catch (const std::exception& e) {
        throw StageError("input", e.what());
    }

    const int n = data.n();
    IdentifiedSystem out{.n = n,
                         .alpha_hat = 0.0,
                         .sigma_hat = 0.0,
                         .jump = std::nullopt,
                         .correction = {},
                         .dictionary = dict,
                         .drift_coeffs = {},
                         .diffusion_coeffs = {},
                         .drift_dense = {},
                         .diffusion_dense = {},
                         .diffusion_index = diffusion_pairs(n),
                         .diagnostics = {}};
    auto& diag = out.diagnostics;
    const auto& cfg = options.annulus;
    if (auto w = epsilon_step_warning(cfg.epsilon, data.h); !w.empty()) diag.warnings.push_back(w);

    try {
        const auto radii = increment_radii(data);
        auto bands = band_counts(radii, cfg);
        bool any = false;
        for (auto c : bands.counts) any = any || c > 0;
        if (!any) {
            out.alpha_hat = std::numeric_limits<double>::quiet_NaN();
            out.sigma_hat = 0.0;
            diag.warnings.push_back("no increment reached epsilon; Levy component treated as absent");
        } else {
            auto est = estimate_alpha_sigma(bands.counts, cfg, data.h, data.M(), n);
            out.alpha_hat = est.alpha_hat;
            out.sigma_hat = est.sigma_hat;
            for (auto& w : bands.warnings) diag.warnings.push_back(w);
            for (auto& w : est.warnings) diag.warnings.push_back(w);
            out.jump = std::move(est);
        }
    } catch (const std::exception& e) {
        throw StageError("jump", e.what());
    }

    FilteredDataset fd;
    try {
        fd = filter_small_increments(data, cfg.epsilon);
    } catch (const std::exception& e) {
        throw StageError("filter", e.what());
    }
    diag.M = fd.M;
    diag.M_hat = fd.M_hat;
    diag.retention = fd.retention();
    if (fd.M_hat < dict.size()) {
        diag.warnings.push_back("fewer retained samples than basis functions");
    }

    try {
        out.correction = bias_correction(out.alpha_hat, out.sigma_hat, cfg.epsilon, n);
    } catch (const std::exception& e) {
        throw StageError("bias", e.what());
    }

    const int folds = options.sparsify.enabled ? options.sparsify.folds : 1;
    const auto k_count = static_cast<Eigen::Index>(dict.size());
    const auto pairs = out.diffusion_index;
    std::optional<FoldedSystem> system;
    try {
        system.emplace(build_system(fd, dict, &out.correction, true, true, folds));
    } catch (const std::exception& e) {
        throw StageError("design", e.what());
    }

    const Matrix full = system->factor();
    Matrix dense;
    try {
        LeastSquaresResult info;
        dense = dense_fit(*system, full, &info);
        diag.rank = info.rank;
        diag.rank_deficient = info.rank_deficient;
        if (info.rank_deficient) {
            diag.warnings.push_back("design matrix is rank deficient; minimum-norm coefficients reported");
        }
        Eigen::JacobiSVD<Matrix> svd(full.leftCols(k_count));
        const auto& sv = svd.singularValues();
        diag.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                         : std::numeric_limits<double>::infinity();
    } catch (const std::exception& e) {
        throw StageError("drift", e.what());
    }
    out.drift_dense = dense.topRows(n);
    out.diffusion_dense = dense.bottomRows(static_cast<Eigen::Index>(pairs.size()));
    out.drift_coeffs = out.drift_dense;
    out.diffusion_coeffs = out.diffusion_dense;

    for (Eigen::Index r = 0; r < system->rhs_count(); ++r) {
        ComponentDiagnostics comp;
        if (r < n) {
            comp.label = "b" + std::to_string(r + 1);
        } else {
            const auto [a, b] = pairs[static_cast<std::size_t>(r - n)];
            comp.label = "a" + std::to_string(a + 1) + std::to_string(b + 1);
        }
        comp.residual_rms = std::sqrt(system->residual_ss(full, r, dense.row(r).transpose()) /
                                      static_cast<double>(fd.M_hat));
        if (options.sparsify.enabled) {
            try {
                auto sparse = sparsify_cv(*system, r, dense.row(r).transpose(), options.sparsify.thresholds);
                if (r < n) {
                    out.drift_coeffs.row(r) = sparse.coefficients.transpose();
                } else {
                    out.diffusion_coeffs.row(r - n) = sparse.coefficients.transpose();
                }
                for (auto& w : sparse.warnings) diag.warnings.push_back(comp.label + ": " + w);
                comp.cv = std::move(sparse.report);
            } catch (const std::exception& e) {
                throw StageError("sparsify", comp.label + ": " + e.what());
            }
        }
        diag.components.push_back(std::move(comp));
    }

    // smallest eigenvalue of the fitted diffusion matrix over a strided subsample
    const auto rows = fd.Z_hat.rows();
    const auto want = static_cast<Eigen::Index>(std::max<std::size_t>(1, options.diagnostic_points));
    const Eigen::Index stride = std::max<Eigen::Index>(1, rows / want);
    double min_eig = std::numeric_limits<double>::infinity();
    Matrix a(n, n);
    for (Eigen::Index j = 0; j < rows; j += stride) {
        std::span<const double> z(fd.Z_hat.row(j).data(), static_cast<std::size_t>(n));
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto [i, k] = pairs[p];
            a(i, k) = a(k, i) = out.diffusion(i, k, z);
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, eig.eigenvalues()(0));
    }
    diag.min_diffusion_eigenvalue = min_eig;
    if (min_eig < 0.0) diag.warnings.push_back("fitted diffusion matrix is not positive semidefinite everywhere");
    return out;
}

}  // namespace levyid
