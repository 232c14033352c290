#pragma once

#include "levyid/dictionary.hpp"
#include "levyid/sde.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace levyid {

/// A built-in benchmark system with its sampling domain, regression
/// dictionary and, where the truth is a finite dictionary expansion, the true
/// coefficients. Diffusion rows follow diffusion_pairs(n).
struct ExampleSetup {
    int number = 0;
    std::string name;
    SdeModel model;
    InitialSampler sampler;
    std::size_t default_M = 0;
    Dictionary dictionary;
    std::optional<Matrix> true_drift;      // n x K
    std::optional<Matrix> true_diffusion;  // n(n+1)/2 x K
};

/// Names accepted by builtin_model: double_well_1d, maier_stein_2d,
/// lorenz_3d, gene_regulatory_1d (examples 1 to 4 in that order).
const std::vector<std::string>& builtin_model_names();

ExampleSetup builtin_model(std::string_view name, double alpha, double sigma = 2.0);
ExampleSetup example_setup(int number, double alpha, double sigma = 2.0);

/// The 19 basis expressions used for the gene regulatory system.
std::vector<std::string> gene_regulatory_dictionary_expressions();

/// (i, j) index pairs with i <= j, in row-major order.
std::vector<std::pair<int, int>> diffusion_pairs(int n);

}  // namespace levyid
