#include "levyid/dictionary.hpp"

#include "levyid/expression.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace levyid {

Dictionary::Dictionary(int dimension, std::vector<BasisFunction> entries) : dimension_(dimension) {
    if (dimension < 1) throw std::invalid_argument("dictionary dimension must be at least 1");
    if (entries.empty()) throw std::invalid_argument("dictionary must have at least one entry");
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (!seen.insert(e.name).second) {
            throw std::invalid_argument("duplicate dictionary entry '" + e.name + "'");
        }
        if (!e.fn) throw std::invalid_argument("dictionary entry '" + e.name + "' has no function");
    }
    entries_ = std::make_shared<const std::vector<BasisFunction>>(std::move(entries));
}

std::vector<std::string> Dictionary::names() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (const auto& e : *entries_) out.push_back(e.name);
    return out;
}

void Dictionary::evaluate_row(std::span<const double> x, std::span<double> out) const {
    const auto& entries = *entries_;
    for (std::size_t k = 0; k < entries.size(); ++k) out[k] = entries[k].fn(x);
}

double Dictionary::expand(std::span<const double> coeffs, std::span<const double> x) const {
    const auto& entries = *entries_;
    double sum = 0.0;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (coeffs[k] != 0.0) sum += coeffs[k] * entries[k].fn(x);
    }
    return sum;
}

namespace {

void collect_exponents(int n, int remaining, int var, std::vector<int>& current,
                       std::vector<std::vector<int>>& out) {
    if (var == n - 1) {
        current[static_cast<std::size_t>(var)] = remaining;
        out.push_back(current);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        current[static_cast<std::size_t>(var)] = e;
        collect_exponents(n, remaining - e, var + 1, current, out);
    }
}

std::string monomial_name(const std::vector<int>& exps) {
    std::string name;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!name.empty()) name += '*';
        name += 'x' + std::to_string(i + 1);
        if (exps[i] > 1) name += '^' + std::to_string(exps[i]);
    }
    return name.empty() ? "1" : name;
}

}  // namespace

Dictionary polynomial_dictionary(int n, int degree) {
    if (n < 1) throw std::invalid_argument("polynomial dictionary dimension must be at least 1");
    if (degree < 0) throw std::invalid_argument("polynomial degree must be non-negative");
    std::vector<BasisFunction> entries;
    for (int d = 0; d <= degree; ++d) {
        std::vector<std::vector<int>> exps;
        std::vector<int> current(static_cast<std::size_t>(n), 0);
        collect_exponents(n, d, 0, current, exps);
        for (auto& e : exps) {
            auto name = monomial_name(e);
            entries.push_back({std::move(name), [e](std::span<const double> x) {
                                   double v = 1.0;
                                   for (std::size_t i = 0; i < e.size(); ++i) {
                                       for (int p = 0; p < e[i]; ++p) v *= x[i];
                                   }
                                   return v;
                               }});
        }
    }
    return Dictionary(n, std::move(entries));
}

Dictionary custom_dictionary(const std::vector<std::string>& expressions, int n) {
    std::vector<BasisFunction> entries;
    entries.reserve(expressions.size());
    for (std::size_t k = 0; k < expressions.size(); ++k) {
        try {
            auto expr = std::make_shared<const Expression>(Expression::parse(expressions[k], n));
            entries.push_back(
                {expressions[k], [expr](std::span<const double> x) { return expr->evaluate(x); }});
        } catch (const ExpressionError& e) {
            throw ExpressionError("dictionary entry " + std::to_string(k + 1) + " '" + expressions[k] +
                                      "': " + e.what(),
                                  e.position());
        }
    }
    return Dictionary(n, std::move(entries));
}

Dictionary load_dictionary_file(const std::filesystem::path& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dictionary file " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        lines.push_back(line.substr(first, last - first + 1));
    }
    return custom_dictionary(lines, n);
}

Matrix evaluate_design_matrix(const Dictionary& dict, const RowMatrix& points) {
    if (points.cols() != dict.dimension()) {
        throw std::invalid_argument("points have " + std::to_string(points.cols()) +
                                    " columns, dictionary expects " +
                                    std::to_string(dict.dimension()));
    }
    const auto rows = points.rows();
    const auto k_count = static_cast<Eigen::Index>(dict.size());
    Matrix design(rows, k_count);
    std::vector<double> row_values(dict.size());
    for (Eigen::Index j = 0; j < rows; ++j) {
        std::span<const double> x(points.row(j).data(), static_cast<std::size_t>(points.cols()));
        dict.evaluate_row(x, row_values);
        for (Eigen::Index k = 0; k < k_count; ++k) {
            const double v = row_values[static_cast<std::size_t>(k)];
            if (!std::isfinite(v)) {
                throw std::domain_error("basis entry '" + dict.name(static_cast<std::size_t>(k)) +
                                        "' is not finite at row " + std::to_string(j));
            }
            design(j, k) = v;
        }
    }
    return design;
}

}  // namespace levyid
