#include "levyid/models.hpp"
#include "levyid/sde.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace levyid;

namespace {

SdeModel constant_model(int n, std::vector<double> drift, std::vector<double> factor, double sigma, double alpha) {
    SdeModel m;
    m.n = n;
    m.drift = [drift](std::span<const double>, std::span<double> out) {
        for (std::size_t i = 0; i < drift.size(); ++i) out[i] = drift[i];
    };
    m.diffusion_factor = [factor](std::span<const double>, std::span<double> out) {
        for (std::size_t i = 0; i < factor.size(); ++i) out[i] = factor[i];
    };
    m.levy_intensity = sigma;
    m.levy_alpha = alpha;
    return m;
}

SdeModel cubic_drift_model() {
    SdeModel m;
    m.n = 1;
    m.drift = [](std::span<const double> x, std::span<double> out) { out[0] = 4.0 * x[0] - x[0] * x[0] * x[0]; };
    m.diffusion_factor = [](std::span<const double>, std::span<double> out) { out[0] = 0.0; };
    m.levy_intensity = 0.0;
    return m;
}

}  // namespace

TEST_CASE("zero model leaves the state unchanged") {
    const auto m = constant_model(2, {0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, 0.0, 1.0);
    RngStream rng(1);
    const std::vector<double> z{0.3, -1.7};
    CHECK(euler_step(m, z, 0.01, rng) == z);
}

TEST_CASE("pure drift step") {
    RngStream rng(2);
    const auto x = euler_step(cubic_drift_model(), std::vector<double>{1.0}, 0.001, rng);
    CHECK(x[0] == 1.003);
}

TEST_CASE("drift contribution scales linearly with h when noise is off") {
    RngStream rng(3);
    const auto m = cubic_drift_model();
    const double z = 1.7;
    const double d1 = euler_step(m, std::vector<double>{z}, 1e-3, rng)[0] - z;
    const double d2 = euler_step(m, std::vector<double>{z}, 2e-3, rng)[0] - z;
    CHECK(d2 == doctest::Approx(2.0 * d1).epsilon(1e-12));
}

TEST_CASE("non-finite drift is reported with its row") {
    SdeModel m = cubic_drift_model();
    m.drift = [](std::span<const double> x, std::span<double> out) {
        out[0] = x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    };
    const auto sampler = InitialSampler::grid({{0.0, 1.0}}, {3});
    try {
        generate_pairs(m, sampler, 3, 1e-3, RngStream(4));
        FAIL("expected an error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("grid sampler enumerates lattice points lexicographically") {
    const auto s = InitialSampler::grid({{-2.0, 2.0}, {-2.0, 2.0}}, {3, 3});
    CHECK(s.count(12345) == 9);
    const auto m = constant_model(2, {0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, 0.0, 1.0);
    const auto data = generate_pairs(m, s, 1, 1e-3, RngStream(5));
    REQUIRE(data.M() == 9);
    const double axis[3] = {-2.0, 0.0, 2.0};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(data.Z(3 * i + j, 0) == axis[i]);
            CHECK(data.Z(3 * i + j, 1) == axis[j]);
        }
    }
    CHECK(data.X == data.Z);
}

TEST_CASE("Lorenz mesh at 400 per axis has 6.4e7 points") {
    const auto setup = builtin_model("lorenz_3d", 1.5);
    const auto s = InitialSampler::grid(setup.sampler.bounds, {400, 400, 400});
    CHECK(s.count(1) == 64'000'000);
    GenerateOptions opt;
    opt.memory_budget_bytes = std::size_t{1} << 30;
    try {
        generate_pairs(setup.model, s, 1, 1e-3, RngStream(6), opt);
        FAIL("expected a budget error");
    } catch (const std::length_error& e) {
        CHECK(std::string(e.what()).find("64000000") != std::string::npos);
    }
}

TEST_CASE("uniform sampler stays in bounds") {
    const auto m = constant_model(2, {0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, 0.0, 1.0);
    const auto data = generate_pairs(m, InitialSampler::uniform({{-3.0, 3.0}, {0.0, 5.0}}), 10'000, 1e-3, RngStream(7));
    CHECK(data.Z.col(0).minCoeff() >= -3.0);
    CHECK(data.Z.col(0).maxCoeff() <= 3.0);
    CHECK(data.Z.col(1).minCoeff() >= 0.0);
    CHECK(data.Z.col(1).maxCoeff() <= 5.0);
}

TEST_CASE("datasets depend on the seed only") {
    const auto setup = builtin_model("maier_stein_2d", 1.0);
    GenerateOptions one, three;
    three.workers = 3;
    const std::size_t M = 3 * generate_block_rows + 17;
    const auto a = generate_pairs(setup.model, setup.sampler, M, 1e-3, RngStream(8), one);
    const auto b = generate_pairs(setup.model, setup.sampler, M, 1e-3, RngStream(8), three);
    const auto c = generate_pairs(setup.model, setup.sampler, M, 1e-3, RngStream(9), one);
    CHECK(a.Z == b.Z);
    CHECK(a.X == b.X);
    CHECK(a.X != c.X);
}

TEST_CASE("Gaussian increments have mean b h and covariance a h") {
    const std::vector<double> b{1.0, -2.0};
    const std::vector<double> lambda{1.0, 0.5, 0.0, 2.0};
    const auto m = constant_model(2, b, lambda, 0.0, 1.0);
    const std::size_t M = 1'000'000;
    const double h = 1e-2;
    const auto data = generate_pairs(m, InitialSampler::uniform({{0.0, 1.0}, {0.0, 1.0}}), M, h, RngStream(10));
    const Eigen::MatrixXd d = data.X - data.Z;
    const Eigen::RowVector2d mean = d.colwise().mean();
    const Eigen::MatrixXd centered = d.rowwise() - mean;
    const Eigen::Matrix2d cov = centered.transpose() * centered / static_cast<double>(M - 1);
    const Eigen::Matrix2d a = (Eigen::Matrix2d() << 1.25, 1.0, 1.0, 4.0).finished();
    const double root_m = std::sqrt(static_cast<double>(M));
    for (int i = 0; i < 2; ++i) {
        // Standard error of the mean is sqrt(a_ii h / M).
        CHECK(std::abs(mean(i) - b[static_cast<std::size_t>(i)] * h) <= 5.0 * std::sqrt(a(i, i) * h) / root_m);
        for (int j = 0; j < 2; ++j) {
            const double se = std::sqrt(a(i, i) * a(j, j) + a(i, j) * a(i, j)) * h;
            CHECK(std::abs(cov(i, j) - a(i, j) * h) <= 5.0 * se / root_m);
        }
    }
}

TEST_CASE("trajectory mode chains steps") {
    const auto setup = builtin_model("double_well_1d", 1.0);
    GenerateOptions opt;
    opt.trajectory = true;
    const auto data = generate_pairs(setup.model, setup.sampler, 1000, 1e-3, RngStream(11), opt);
    REQUIRE(data.M() == 1000);
    for (Eigen::Index j = 1; j < 1000; ++j) REQUIRE(data.Z(j, 0) == data.X(j - 1, 0));
}

TEST_CASE("diffusion matrix is Lambda Lambda^T") {
    const auto setup = builtin_model("lorenz_3d", 1.0);
    const std::vector<double> x{0.5, -1.0, 2.0};
    const auto a = setup.model.diffusion_matrix(x);
    CHECK(a(0, 0) == doctest::Approx(1.0 + 3.0 * 3.0));
    CHECK(a(0, 1) == doctest::Approx(-1.0));
    CHECK(a(0, 2) == doctest::Approx(0.0));
    CHECK(a(1, 1) == doctest::Approx(1.0));
    CHECK(a(2, 2) == doctest::Approx(0.25));
}

TEST_CASE("built-in models carry the published parameters") {
    const auto gene = builtin_model("gene_regulatory_1d", 1.0);
    double b = 0.0;
    double x = 2.0;
    gene.model.drift(std::span<const double>(&x, 1), std::span<double>(&b, 1));
    CHECK(b == doctest::Approx(6.0 * 4.0 / 14.0 - 2.0 + 0.4));
    CHECK(gene.model.diffusion_matrix(std::span<const double>(&x, 1))(0, 0) == doctest::Approx(4.0 / 4.5));
    CHECK(gene.dictionary.size() == 19);

    const auto ms = builtin_model("maier_stein_2d", 1.0);
    const std::vector<double> p{0.5, -1.0};
    double out[2];
    ms.model.drift(p, out);
    CHECK(out[0] == doctest::Approx(0.5 - 0.125 - 5.0 * 0.5));
    CHECK(out[1] == doctest::Approx(-(1.0 + 0.25) * -1.0));
    CHECK_THROWS(builtin_model("nope", 1.0));
    CHECK(example_setup(3, 1.0).name == "lorenz_3d");
}
