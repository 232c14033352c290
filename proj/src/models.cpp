#include "levyid/models.hpp"

#include <cmath>
#include <stdexcept>

namespace levyid {

const std::vector<std::string>& builtin_model_names() {
    static const std::vector<std::string> names{"double_well_1d", "maier_stein_2d", "lorenz_3d",
                                                "gene_regulatory_1d"};
    return names;
}

std::vector<std::string> gene_regulatory_dictionary_expressions() {
    return {
        "1",
        "x1",
        "x1^2",
        "x1^3",
        "sin(x1)",
        "cos(11*x1)",
        "sin(11*x1)",
        "-10*tanh(10*x1)^2+10",
        "-10*tanh(10*x1-10)^2+10",
        "exp(-50*x1^2)",
        "exp(-50*(x1-3)^2)",
        "exp(-0.3*x1^2)",
        "exp(-0.3*(x1-3)^2)",
        "exp(-2*(x1-2)^2)",
        "exp(-50*(x1-4)^2)",
        "exp(-0.6*(x1-4)^2)",
        "exp(-0.6*(x1-3)^2)",
        "-2*tanh(2*x1-4)^2+2",
        "tanh(x1-4)^2+1",
    };
}

std::vector<std::pair<int, int>> diffusion_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) out.emplace_back(i, j);
    }
    return out;
}

namespace {

using Span = std::span<const double>;
using Out = std::span<double>;

ExampleSetup double_well(double alpha, double sigma) {
    ExampleSetup s{.number = 1,
                   .name = "double_well_1d",
                   .model = {},
                   .sampler = InitialSampler::uniform({{-3.0, 3.0}}),
                   .default_M = 1'000'000,
                   .dictionary = polynomial_dictionary(1, 6),
                   .true_drift = {},
                   .true_diffusion = {}};
    s.model.n = 1;
    s.model.drift = [](Span x, Out b) { b[0] = 4.0 * x[0] - x[0] * x[0] * x[0]; };
    s.model.diffusion_factor = [](Span x, Out lam) { lam[0] = 1.0 + x[0]; };
    s.model.levy_intensity = sigma;
    s.model.levy_alpha = alpha;
    s.model.description = "double_well_1d: b = 4x - x^3, Lambda = 1 + x";

    Matrix drift = Matrix::Zero(1, 7);
    drift(0, 1) = 4.0;
    drift(0, 3) = -1.0;
    Matrix diffusion = Matrix::Zero(1, 7);
    diffusion(0, 0) = 1.0;
    diffusion(0, 1) = 2.0;
    diffusion(0, 2) = 1.0;
    s.true_drift = drift;
    s.true_diffusion = diffusion;
    return s;
}

ExampleSetup maier_stein(double alpha, double sigma) {
    ExampleSetup s{.number = 2,
                   .name = "maier_stein_2d",
                   .model = {},
                   .sampler = InitialSampler::uniform({{-2.0, 2.0}, {-2.0, 2.0}}),
                   .default_M = 10'000'000,
                   .dictionary = polynomial_dictionary(2, 3),
                   .true_drift = {},
                   .true_diffusion = {}};
    s.model.n = 2;
    s.model.drift = [](Span x, Out b) {
        b[0] = x[0] - x[0] * x[0] * x[0] - 5.0 * x[0] * x[1] * x[1];
        b[1] = -(1.0 + x[0] * x[0]) * x[1];
    };
    s.model.diffusion_factor = [](Span x, Out lam) {
        lam[0] = 1.0 + x[1];
        lam[1] = 1.0;
        lam[2] = 0.0;
        lam[3] = x[0];
    };
    s.model.levy_intensity = sigma;
    s.model.levy_alpha = alpha;
    s.model.description = "maier_stein_2d";

    // basis: 1, x1, x2, x1^2, x1*x2, x2^2, x1^3, x1^2*x2, x1*x2^2, x2^3
    Matrix drift = Matrix::Zero(2, 10);
    drift(0, 1) = 1.0;
    drift(0, 6) = -1.0;
    drift(0, 8) = -5.0;
    drift(1, 2) = -1.0;
    drift(1, 7) = -1.0;
    Matrix diffusion = Matrix::Zero(3, 10);
    diffusion(0, 0) = 2.0;
    diffusion(0, 2) = 2.0;
    diffusion(0, 5) = 1.0;
    diffusion(1, 1) = 1.0;
    diffusion(2, 3) = 1.0;
    s.true_drift = drift;
    s.true_diffusion = diffusion;
    return s;
}

ExampleSetup lorenz(double alpha, double sigma) {
    ExampleSetup s{.number = 3,
                   .name = "lorenz_3d",
                   .model = {},
                   .sampler = InitialSampler::grid({{-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}}, {100, 100, 100}),
                   .default_M = 1'000'000,
                   .dictionary = polynomial_dictionary(3, 2),
                   .true_drift = {},
                   .true_diffusion = {}};
    s.model.n = 3;
    s.model.drift = [](Span x, Out b) {
        b[0] = 10.0 * (x[1] - x[0]);
        b[1] = 4.0 * x[0] - x[1] - x[0] * x[2];
        b[2] = -8.0 / 3.0 * x[2] + x[0] * x[1];
    };
    s.model.diffusion_factor = [](Span x, Out lam) {
        lam[0] = 1.0 + x[2];
        lam[1] = 1.0;
        lam[2] = 0.0;
        lam[3] = 0.0;
        lam[4] = x[1];
        lam[5] = 0.0;
        lam[6] = 0.0;
        lam[7] = 0.0;
        lam[8] = x[0];
    };
    s.model.levy_intensity = sigma;
    s.model.levy_alpha = alpha;
    s.model.description = "lorenz_3d";

    // basis: 1, x1, x2, x3, x1^2, x1*x2, x1*x3, x2^2, x2*x3, x3^2
    Matrix drift = Matrix::Zero(3, 10);
    drift(0, 1) = -10.0;
    drift(0, 2) = 10.0;
    drift(1, 1) = 4.0;
    drift(1, 2) = -1.0;
    drift(1, 6) = -1.0;
    drift(2, 3) = -8.0 / 3.0;
    drift(2, 5) = 1.0;
    // pairs: 11, 12, 13, 22, 23, 33
    Matrix diffusion = Matrix::Zero(6, 10);
    diffusion(0, 0) = 2.0;
    diffusion(0, 3) = 2.0;
    diffusion(0, 9) = 1.0;
    diffusion(1, 2) = 1.0;
    diffusion(3, 7) = 1.0;
    diffusion(5, 4) = 1.0;
    s.true_drift = drift;
    s.true_diffusion = diffusion;
    return s;
}

ExampleSetup gene_regulatory(double alpha, double sigma) {
    ExampleSetup s{.number = 4,
                   .name = "gene_regulatory_1d",
                   .model = {},
                   .sampler = InitialSampler::uniform({{0.0, 5.0}}),
                   .default_M = 10'000'000,
                   .dictionary = custom_dictionary(gene_regulatory_dictionary_expressions(), 1),
                   .true_drift = {},
                   .true_diffusion = {}};
    constexpr double k_f = 6.0;
    constexpr double K_d = 10.0;
    constexpr double k_d = 1.0;
    constexpr double R_bas = 0.4;
    s.model.n = 1;
    s.model.drift = [](Span x, Out b) {
        const double x2 = x[0] * x[0];
        b[0] = k_f * x2 / (x2 + K_d) - k_d * x[0] + R_bas;
    };
    s.model.diffusion_factor = [](Span x, Out lam) { lam[0] = x[0] / std::sqrt(x[0] * x[0] + 0.5); };
    s.model.levy_intensity = sigma;
    s.model.levy_alpha = alpha;
    s.model.description = "gene_regulatory_1d: k_f=6, K_d=10, k_d=1, R_bas=0.4";
    return s;
}

}  // namespace

ExampleSetup example_setup(int number, double alpha, double sigma) {
    ExampleSetup s = [&] {
        switch (number) {
            case 1: return double_well(alpha, sigma);
            case 2: return maier_stein(alpha, sigma);
            case 3: return lorenz(alpha, sigma);
            case 4: return gene_regulatory(alpha, sigma);
            default: throw std::invalid_argument("example must be 1, 2, 3 or 4");
        }
    }();
    s.model.validate();
    return s;
}

ExampleSetup builtin_model(std::string_view name, double alpha, double sigma) {
    const auto& names = builtin_model_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return example_setup(static_cast<int>(i) + 1, alpha, sigma);
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

}  // namespace levyid
