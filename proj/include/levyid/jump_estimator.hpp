#pragma once

#include "levyid/sde.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace levyid {

/// Geometric shells [m^k eps, m^(k+1) eps), k = 0..N.
struct AnnulusConfig {
    double epsilon = 1.0;
    double m = 5.0;
    int N = 2;

    void validate() const;
};

struct BandCounts {
    std::vector<std::uint64_t> counts;  // N + 1 entries
    std::vector<std::string> warnings;
};

/// Stability index and jump intensity recovered from shell counts.
///
/// alpha_per_k[k - 1] = ln(n_0 / n_k) / (k ln m), k = 1..N. sigma_per_k has
/// N + 1 entries from inverting the shell mass at alpha_hat. Shells dropped
/// for being empty hold NaN and do not enter the means.
struct JumpEstimate {
    double alpha_hat = 0.0;
    double sigma_hat = 0.0;
    std::vector<double> alpha_per_k;
    std::vector<double> sigma_per_k;
    std::vector<std::uint64_t> counts;
    std::size_t M = 0;
    double h = 0.0;
    int n = 0;
    AnnulusConfig config;
    std::vector<std::string> warnings;

    /// alpha_hat outside (0, 2): reported, never clamped.
    bool alpha_out_of_range() const { return !(alpha_hat > 0.0 && alpha_hat < 2.0); }
};

/// Euclidean norm of each increment X_j - Z_j.
std::vector<double> increment_radii(const PairDataset& data);

BandCounts band_counts(std::span<const double> radii, const AnnulusConfig& cfg);

/// Expected count in shell k for M samples over time h, from integrating
/// sigma^alpha c(n, alpha) |y|^-(n + alpha) over the shell.
double expected_band_count(double alpha, double sigma, const AnnulusConfig& cfg, int k, double h,
                           std::size_t M, int n);

JumpEstimate estimate_alpha_sigma(std::span<const std::uint64_t> counts, const AnnulusConfig& cfg,
                                  double h, std::size_t M, int n);

/// radii -> band_counts -> estimate_alpha_sigma, with the eps >> h advisory.
JumpEstimate estimate_jump_parameters(const PairDataset& data, const AnnulusConfig& cfg);

/// Warning text when eps < 100 h, empty otherwise.
std::string epsilon_step_warning(double epsilon, double h);

struct SweepCell {
    double epsilon = 0.0;
    double h = 0.0;
    std::optional<double> alpha_hat;  // empty when the cell failed
    std::optional<double> sigma_hat;
    std::string error;
};

/// alpha_hat over an (eps, h) grid, one fresh dataset per cell. Cell i
/// (h-major, then eps) draws from rng.derive(i); failures become empty cells.
std::vector<SweepCell> sensitivity_sweep(const SdeModel& model, const InitialSampler& sampler,
                                         const std::vector<double>& eps_list,
                                         const std::vector<double>& h_list,
                                         const AnnulusConfig& cfg_template, std::size_t M,
                                         const RngStream& rng, const GenerateOptions& options = {});

}  // namespace levyid
