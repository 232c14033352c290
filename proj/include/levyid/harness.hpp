#pragma once

#include "levyid/coefficient_estimator.hpp"
#include "levyid/dataset_io.hpp"
#include "levyid/models.hpp"

#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace levyid {

/// Bad or inconsistent command-line configuration (exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { exit_ok = 0, exit_estimation_failure = 1, exit_io_failure = 2 };

struct RunConfig {
    std::string command;  // simulate | estimate | identify | reproduce | sweep

    std::string model = "double_well_1d";
    std::optional<std::filesystem::path> dict_file;
    std::optional<int> degree;  // polynomial dictionary, overrides the model's
    int example = 0;            // reproduce only

    double alpha = 1.0;
    double sigma = 2.0;
    double h = 1e-3;
    std::optional<std::size_t> M;  // model default when empty
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::vector<std::size_t> grid;
    bool trajectory = false;
    unsigned workers = 1;

    AnnulusConfig annulus;
    SparsifyOptions sparsify;

    std::optional<std::filesystem::path> in;
    std::optional<std::filesystem::path> out;
    std::filesystem::path out_dir = ".";

    std::vector<double> eps_list;
    std::vector<double> h_list;

    /// Throws ConfigError naming the first bad field.
    void validate() const;

    /// Every field with defaults filled, in a fixed order.
    Metadata resolved() const;
};

/// Each returns an ExitCode. Progress and results go to `out`, diagnostics
/// and errors to `err`. The resolved config is echoed first.
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_identify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reproduce(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatch on cfg.command.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Published learned values for one basis entry, columns alpha = 0.5, 1, 1.5.
struct ReferenceEntry {
    std::string component;  // "b1", "a12", ...
    std::size_t basis = 0;
    std::array<double, 3> value{};
};

struct ReferenceTable {
    int example = 0;
    std::array<double, 3> alpha_hat{};
    std::array<double, 3> sigma_hat{};
    std::vector<ReferenceEntry> entries;  // entries absent here are reported as 0

    /// Column for alpha, or empty when alpha is not one of 0.5, 1, 1.5.
    static std::optional<std::size_t> column(double alpha);
    std::optional<double> value(const std::string& component, std::size_t basis, std::size_t column) const;
};

/// Published learned values for examples 1 to 3; example 4 has jump values only.
const ReferenceTable& reference_table(int example);

/// sqrt(int (f - g)^2) / sqrt(int g^2) over [lo, hi], midpoint rule.
double relative_l2_error(const std::function<double(double)>& f, const std::function<double(double)>& g,
                         double lo, double hi, std::size_t points = 2000);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Tolerance checks for a reproduced example, as used by `reproduce`.
std::vector<CheckResult> example_checks(const ExampleSetup& setup, double alpha, const IdentifiedSystem& sys);

/// Example 4 curve table "x,drift_true,drift_learned,diffusion_true,diffusion_learned".
std::string gene_regulatory_curves_csv(const ExampleSetup& setup, const IdentifiedSystem& sys,
                                       std::size_t points = 501);

/// Comma-separated lists as used by the CLI ("0.1,0.2", "100,100,100").
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::size_t> parse_count_list(const std::string& text);

/// Accepts integer or floating notation ("1000000", "1e6"); rejects fractions.
std::size_t parse_count(const std::string& text);

}  // namespace levyid
