#include "levyid/jump_estimator.hpp"

#include "levyid/stable.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace levyid {

void AnnulusConfig::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("annulus epsilon must be positive");
    }
    if (!(m > 1.0) || !std::isfinite(m)) throw std::invalid_argument("annulus ratio m must exceed 1");
    if (N < 1) throw std::invalid_argument("annulus band exponent N must be at least 1");
}

std::vector<double> increment_radii(const PairDataset& data) {
    data.validate();
    std::vector<double> radii(data.M());
    for (Eigen::Index j = 0; j < data.Z.rows(); ++j) {
        radii[static_cast<std::size_t>(j)] = (data.X.row(j) - data.Z.row(j)).norm();
    }
    return radii;
}

BandCounts band_counts(std::span<const double> radii, const AnnulusConfig& cfg) {
    cfg.validate();
    BandCounts out;
    out.counts.assign(static_cast<std::size_t>(cfg.N) + 1, 0);
    std::vector<double> edges(static_cast<std::size_t>(cfg.N) + 2);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        edges[k] = cfg.epsilon * std::pow(cfg.m, static_cast<double>(k));
    }
    for (double r : radii) {
        if (r < edges.front() || r >= edges.back()) continue;
        // shells are few; a linear scan beats log() rounding at the edges
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            if (r < edges[k + 1]) {
                ++out.counts[k];
                break;
            }
        }
    }
    std::ostringstream empty;
    for (std::size_t k = 0; k < out.counts.size(); ++k) {
        if (out.counts[k] == 0) empty << (empty.tellp() > 0 ? ", " : "") << k;
    }
    if (empty.tellp() > 0) out.warnings.push_back("empty annulus bands: " + empty.str());
    return out;
}

double expected_band_count(double alpha, double sigma, const AnnulusConfig& cfg, int k, double h,
                           std::size_t M, int n) {
    cfg.validate();
    const double mass = unit_sphere_area(n) * std::pow(sigma, alpha) * levy_kernel_constant(n, alpha) /
                        alpha * std::pow(cfg.epsilon, -alpha) * std::pow(cfg.m, -k * alpha) *
                        (1.0 - std::pow(cfg.m, -alpha));
    return mass * h * static_cast<double>(M);
}

std::string epsilon_step_warning(double epsilon, double h) {
    if (epsilon < 100.0 * h) {
        std::ostringstream msg;
        msg << "epsilon should greatly exceed h (epsilon = " << epsilon << ", h = " << h << ")";
        return msg.str();
    }
    return {};
}

JumpEstimate estimate_alpha_sigma(std::span<const std::uint64_t> counts, const AnnulusConfig& cfg,
                                  double h, std::size_t M, int n) {
    cfg.validate();
    if (!(h > 0.0)) throw std::invalid_argument("time step h must be positive");
    if (M < 1) throw std::invalid_argument("sample count M must be at least 1");
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (counts.size() != static_cast<std::size_t>(cfg.N) + 1) {
        throw std::invalid_argument("expected N + 1 band counts");
    }

    JumpEstimate est;
    est.counts.assign(counts.begin(), counts.end());
    est.M = M;
    est.h = h;
    est.n = n;
    est.config = cfg;

    std::vector<std::size_t> empty;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) empty.push_back(k);
    }
    auto list = [](const std::vector<std::size_t>& ks) {
        std::ostringstream s;
        for (std::size_t i = 0; i < ks.size(); ++i) s << (i ? ", " : "") << ks[i];
        return s.str();
    };
    if (counts[0] == 0 || empty.size() == counts.size() - 1) {
        throw std::domain_error("empty annulus bands " + list(empty) +
                                "; need n_0 > 0 and at least one populated outer band");
    }
    if (!empty.empty()) {
        est.warnings.push_back("dropping empty annulus bands " + list(empty) + " from the means");
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double ln_m = std::log(cfg.m);
    const double n0 = static_cast<double>(counts[0]);
    double alpha_sum = 0.0;
    int alpha_terms = 0;
    est.alpha_per_k.assign(static_cast<std::size_t>(cfg.N), nan);
    for (int k = 1; k <= cfg.N; ++k) {
        const auto nk = counts[static_cast<std::size_t>(k)];
        if (nk == 0) continue;
        const double a = std::log(n0 / static_cast<double>(nk)) / (k * ln_m);
        est.alpha_per_k[static_cast<std::size_t>(k - 1)] = a;
        alpha_sum += a;
        ++alpha_terms;
    }
    est.alpha_hat = alpha_sum / alpha_terms;
    if (!(est.alpha_hat > 0.0)) {
        throw std::domain_error("band counts non-decreasing; data inconsistent with stable tail");
    }

    est.sigma_per_k.assign(counts.size(), nan);
    if (est.alpha_hat >= 2.0) {
        est.warnings.push_back("alpha_hat >= 2; sigma_hat undefined");
        est.sigma_hat = nan;
        return est;
    }

    const double a = est.alpha_hat;
    const double denom = unit_sphere_area(n) * levy_kernel_constant(n, a) * h *
                         static_cast<double>(M) * (1.0 - std::pow(cfg.m, -a));
    double sigma_sum = 0.0;
    int sigma_terms = 0;
    for (int k = 0; k <= cfg.N; ++k) {
        const auto nk = counts[static_cast<std::size_t>(k)];
        if (nk == 0) continue;
        const double s = std::pow(a * std::pow(cfg.epsilon, a) * std::pow(cfg.m, k * a) *
                                      static_cast<double>(nk) / denom,
                                  1.0 / a);
        est.sigma_per_k[static_cast<std::size_t>(k)] = s;
        sigma_sum += s;
        ++sigma_terms;
    }
    est.sigma_hat = sigma_sum / sigma_terms;
    return est;
}

JumpEstimate estimate_jump_parameters(const PairDataset& data, const AnnulusConfig& cfg) {
    const auto radii = increment_radii(data);
    auto bands = band_counts(radii, cfg);
    auto est = estimate_alpha_sigma(bands.counts, cfg, data.h, data.M(), data.n());
    if (auto w = epsilon_step_warning(cfg.epsilon, data.h); !w.empty()) est.warnings.insert(est.warnings.begin(), w);
    return est;
}

std::vector<SweepCell> sensitivity_sweep(const SdeModel& model, const InitialSampler& sampler,
                                         const std::vector<double>& eps_list,
                                         const std::vector<double>& h_list,
                                         const AnnulusConfig& cfg_template, std::size_t M,
                                         const RngStream& rng, const GenerateOptions& options) {
    if (eps_list.empty() || h_list.empty()) {
        throw std::invalid_argument("sweep needs non-empty epsilon and h lists");
    }
    std::vector<SweepCell> cells;
    cells.reserve(eps_list.size() * h_list.size());
    std::uint64_t index = 0;
    for (double h : h_list) {
        for (double eps : eps_list) {
            SweepCell cell{eps, h, std::nullopt, std::nullopt, {}};
            try {
                const auto data = generate_pairs(model, sampler, M, h, rng.derive(index), options);
                AnnulusConfig cfg = cfg_template;
                cfg.epsilon = eps;
                const auto est = estimate_jump_parameters(data, cfg);
                cell.alpha_hat = est.alpha_hat;
                cell.sigma_hat = est.sigma_hat;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            cells.push_back(std::move(cell));
            ++index;
        }
    }
    return cells;
}

}  // namespace levyid
