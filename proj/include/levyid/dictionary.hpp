#pragma once

#include "levyid/types.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace levyid {

struct BasisFunction {
    std::string name;
    std::function<double(std::span<const double>)> fn;
};

/// Ordered, immutable list of scalar basis functions psi_k: R^n -> R.
/// Coefficient index k always refers to entry k. Copies share storage.
class Dictionary {
public:
    Dictionary(int dimension, std::vector<BasisFunction> entries);

    int dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return entries_->size(); }
    const std::string& name(std::size_t k) const { return (*entries_)[k].name; }
    std::vector<std::string> names() const;

    double evaluate(std::size_t k, std::span<const double> x) const { return (*entries_)[k].fn(x); }
    void evaluate_row(std::span<const double> x, std::span<double> out) const;

    /// sum_k coeffs[k] psi_k(x)
    double expand(std::span<const double> coeffs, std::span<const double> x) const;

private:
    int dimension_;
    std::shared_ptr<const std::vector<BasisFunction>> entries_;
};

/// All monomials of total degree <= degree in graded-lexicographic order:
/// 1, x1, ..., xn, x1^2, x1*x2, ...
Dictionary polynomial_dictionary(int n, int degree);

/// One parsed expression per entry (see Expression for the grammar).
Dictionary custom_dictionary(const std::vector<std::string>& expressions, int n);

/// Reads one expression per line; blank lines and '#' comments are skipped.
Dictionary load_dictionary_file(const std::filesystem::path& path, int n);

/// Entry (j, k) = psi_k(points.row(j)). Throws if any value is non-finite.
Matrix evaluate_design_matrix(const Dictionary& dict, const RowMatrix& points);

}  // namespace levyid
