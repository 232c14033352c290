#include "levyid/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace levyid {

using std::numbers::pi;

void StableParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::invalid_argument("stable alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("stable scale must be positive, got " + std::to_string(scale));
    }
    if (!(skewness >= -1.0 && skewness <= 1.0)) {
        throw std::invalid_argument("stable skewness must lie in [-1, 1], got " +
                                    std::to_string(skewness));
    }
    if (!std::isfinite(shift)) {
        throw std::invalid_argument("stable shift must be finite");
    }
}

namespace {

// Standardized draw (scale 1, shift 0) for the given alpha and skewness.
double cms_standard(double alpha, double beta, double v, double w) {
    if (alpha == 1.0) {
        const double half_pi = pi / 2.0;
        const double bv = half_pi + beta * v;
        return (2.0 / pi) * (bv * std::tan(v) - beta * std::log(half_pi * w * std::cos(v) / bv));
    }
    const double zeta = beta * std::tan(pi * alpha / 2.0);
    const double b = std::atan(zeta) / alpha;
    const double s = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha));
    const double av = alpha * (v + b);
    return s * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
}

}  // namespace

double sample_stable(const StableParams& params, RngStream& rng) {
    params.validate();
    const double v = rng.uniform_open_angle();
    const double w = rng.exponential();
    const double x = cms_standard(params.alpha, params.skewness, v, w);
    if (params.alpha == 1.0) {
        return params.scale * x + (2.0 / pi) * params.skewness * params.scale * std::log(params.scale) +
               params.shift;
    }
    return params.scale * x + params.shift;
}

void sample_rotsym_stable_increment(double alpha, double t, RngStream& rng, std::span<double> out) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw std::invalid_argument("rotationally symmetric increment needs 0 < alpha < 2, got " +
                                    std::to_string(alpha));
    }
    if (!(t > 0.0)) {
        throw std::invalid_argument("increment time must be positive");
    }
    if (out.empty()) {
        throw std::invalid_argument("increment dimension must be at least 1");
    }
    const double sub_alpha = alpha / 2.0;
    const double sub_scale =
        2.0 * std::pow(t, 2.0 / alpha) * std::pow(std::cos(pi * alpha / 4.0), 2.0 / alpha);
    const double v = rng.uniform_open_angle();
    const double w = rng.exponential();
    double f = sub_scale * cms_standard(sub_alpha, 1.0, v, w);
    // totally skewed with alpha/2 < 1 is supported on [0, inf); rounding can undershoot
    if (!(f > 0.0)) f = 0.0;
    const double root = std::sqrt(f);
    for (double& x : out) x = root * rng.normal();
}

std::vector<double> sample_rotsym_stable_increment(double alpha, double t, std::size_t n,
                                                   RngStream& rng) {
    std::vector<double> out(n);
    sample_rotsym_stable_increment(alpha, t, rng, out);
    return out;
}

double levy_kernel_constant(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw std::invalid_argument("kernel constant needs 0 < alpha < 2, got " +
                                    std::to_string(alpha));
    }
    return alpha * std::tgamma((n + alpha) / 2.0) /
           (std::pow(2.0, 1.0 - alpha) * std::pow(pi, n / 2.0) * std::tgamma(1.0 - alpha / 2.0));
}

double unit_sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    return 2.0 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0);
}

}  // namespace levyid
