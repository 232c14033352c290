#pragma once

#include "levyid/dictionary.hpp"
#include "levyid/rng.hpp"
#include "levyid/types.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace levyid {

/// dx = b(x) dt + Lambda(x) dB_t + sigma dL_t with L a rotationally symmetric
/// alpha-stable motion. The diffusion matrix is a(x) = Lambda Lambda^T.
struct SdeModel {
    using VectorField = std::function<void(std::span<const double> x, std::span<double> out)>;

    int n = 1;
    VectorField drift;             // writes n values
    VectorField diffusion_factor;  // writes n*n values, row-major
    double levy_intensity = 0.0;   // sigma >= 0
    double levy_alpha = 1.0;       // in (0, 2), ignored when sigma == 0
    std::string description;

    void validate() const;

    /// Drift b_i = sum_k drift_coeffs(i, k) psi_k and factor
    /// Lambda_ij = sum_k factor_coeffs(i * n + j, k) psi_k.
    static SdeModel from_expansion(const Dictionary& dict, const Matrix& drift_coeffs,
                                   const Matrix& factor_coeffs, double sigma, double alpha,
                                   std::string description = "expansion");

    /// a(x) = Lambda(x) Lambda(x)^T
    Matrix diffusion_matrix(std::span<const double> x) const;
};

/// M paired samples: row j of X is row j of Z evolved over time h.
struct PairDataset {
    RowMatrix Z;
    RowMatrix X;
    double h = 0.0;

    int n() const noexcept { return static_cast<int>(Z.cols()); }
    std::size_t M() const noexcept { return static_cast<std::size_t>(Z.rows()); }
    void validate() const;
};

struct InitialSampler {
    enum class Mode { uniform_box, grid };

    Mode mode = Mode::uniform_box;
    std::vector<std::pair<double, double>> bounds;  // closed interval per axis
    std::vector<std::size_t> grid_counts;           // grid mode only

    static InitialSampler uniform(std::vector<std::pair<double, double>> bounds);
    static InitialSampler grid(std::vector<std::pair<double, double>> bounds,
                               std::vector<std::size_t> counts);

    void validate() const;
    int dimension() const noexcept { return static_cast<int>(bounds.size()); }

    /// Rows generated for a request of `requested` samples; the grid product in grid mode.
    std::size_t count(std::size_t requested) const;

    /// Grid point `index` in lexicographic order (first axis slowest).
    void grid_point(std::size_t index, std::span<double> out) const;
};

/// x = z + b(z) h + sqrt(h) Lambda(z) g + sigma L_h.
void euler_step(const SdeModel& model, std::span<const double> z, double h, RngStream& rng,
                std::span<double> out);
std::vector<double> euler_step(const SdeModel& model, std::span<const double> z, double h,
                               RngStream& rng);

struct GenerateOptions {
    unsigned workers = 1;
    /// Chain steps from one initial point and emit overlapping pairs.
    bool trajectory = false;
    /// Upper bound on the bytes of Z and X together.
    std::size_t memory_budget_bytes = std::size_t{3} << 30;
};

/// Rows are produced in blocks with per-block derived streams, so the output
/// depends on (seed, stream_id) only, never on the worker count.
PairDataset generate_pairs(const SdeModel& model, const InitialSampler& sampler, std::size_t M,
                           double h, const RngStream& rng, const GenerateOptions& options = {});

inline constexpr std::size_t generate_block_rows = 1u << 16;

}  // namespace levyid
