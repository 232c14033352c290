#pragma once

#include "levyid/rng.hpp"

#include <span>
#include <vector>

namespace levyid {

/// Parameters of the stable law S_alpha(scale, skewness, shift). The
/// symmetric case has characteristic function exp(-scale^alpha |u|^alpha).
struct StableParams {
    double alpha = 2.0;
    double scale = 1.0;
    double skewness = 0.0;
    double shift = 0.0;

    void validate() const;  // throws std::invalid_argument
};

/// One stable variate by the Chambers-Mallows-Stuck transform.
double sample_stable(const StableParams& params, RngStream& rng);

/// Increment L_t of the n-dimensional rotationally symmetric alpha-stable
/// motion, E exp(i u.L_t) = exp(-t |u|^alpha), built as sqrt(F) * G with G
/// standard normal and F a totally skewed (alpha/2)-stable subordinator.
/// Requires 0 < alpha < 2, t > 0 and out.size() >= 1.
void sample_rotsym_stable_increment(double alpha, double t, RngStream& rng, std::span<double> out);

std::vector<double> sample_rotsym_stable_increment(double alpha, double t, std::size_t n,
                                                   RngStream& rng);

/// c(n, alpha) in the jump kernel W(y) = c(n, alpha) |y|^-(n + alpha).
double levy_kernel_constant(int n, double alpha);

/// Surface area of the unit sphere in R^n: 2 pi^(n/2) / Gamma(n/2).
double unit_sphere_area(int n);

}  // namespace levyid
