#include "levyid/sde.hpp"

#include "levyid/stable.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace levyid {

void SdeModel::validate() const {
    if (n < 1) throw std::invalid_argument("model dimension must be at least 1");
    if (!drift) throw std::invalid_argument("model has no drift field");
    if (!diffusion_factor) throw std::invalid_argument("model has no diffusion factor");
    if (!(levy_intensity >= 0.0) || !std::isfinite(levy_intensity)) {
        throw std::invalid_argument("Levy intensity must be finite and non-negative");
    }
    if (levy_intensity > 0.0 && !(levy_alpha > 0.0 && levy_alpha < 2.0)) {
        throw std::invalid_argument("Levy alpha must lie in (0, 2), got " + std::to_string(levy_alpha));
    }
}

SdeModel SdeModel::from_expansion(const Dictionary& dict, const Matrix& drift_coeffs,
                                  const Matrix& factor_coeffs, double sigma, double alpha,
                                  std::string description) {
    const int n = dict.dimension();
    const auto k_count = static_cast<Eigen::Index>(dict.size());
    if (drift_coeffs.rows() != n || drift_coeffs.cols() != k_count) {
        throw std::invalid_argument("drift coefficients must be n x K");
    }
    if (factor_coeffs.rows() != n * n || factor_coeffs.cols() != k_count) {
        throw std::invalid_argument("diffusion factor coefficients must be (n*n) x K");
    }
    // Row-major copies so each row is a contiguous coefficient span.
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    auto expand_rows = [dict, k_count](RowMajor coeffs) {
        return [dict, k_count, coeffs](std::span<const double> x, std::span<double> out) {
            for (Eigen::Index i = 0; i < coeffs.rows(); ++i) {
                out[static_cast<std::size_t>(i)] =
                    dict.expand({coeffs.row(i).data(), static_cast<std::size_t>(k_count)}, x);
            }
        };
    };
    SdeModel model;
    model.n = n;
    model.drift = expand_rows(drift_coeffs);
    model.diffusion_factor = expand_rows(factor_coeffs);
    model.levy_intensity = sigma;
    model.levy_alpha = alpha;
    model.description = std::move(description);
    model.validate();
    return model;
}

Matrix SdeModel::diffusion_matrix(std::span<const double> x) const {
    std::vector<double> factor(static_cast<std::size_t>(n * n));
    diffusion_factor(x, factor);
    Eigen::Map<const RowMatrix> lam(factor.data(), n, n);
    return lam * lam.transpose();
}

void PairDataset::validate() const {
    if (Z.rows() != X.rows() || Z.cols() != X.cols()) {
        throw std::invalid_argument("Z and X must have identical shape");
    }
    if (Z.rows() < 1 || Z.cols() < 1) throw std::invalid_argument("dataset must be non-empty");
    if (!(h > 0.0)) throw std::invalid_argument("time step h must be positive");
}

InitialSampler InitialSampler::uniform(std::vector<std::pair<double, double>> bounds) {
    InitialSampler s;
    s.mode = Mode::uniform_box;
    s.bounds = std::move(bounds);
    s.validate();
    return s;
}

InitialSampler InitialSampler::grid(std::vector<std::pair<double, double>> bounds,
                                    std::vector<std::size_t> counts) {
    InitialSampler s;
    s.mode = Mode::grid;
    s.bounds = std::move(bounds);
    s.grid_counts = std::move(counts);
    s.validate();
    return s;
}

void InitialSampler::validate() const {
    if (bounds.empty()) throw std::invalid_argument("sampler needs at least one axis");
    for (const auto& [lo, hi] : bounds) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
            throw std::invalid_argument("sampler bounds must be finite with lo <= hi");
        }
    }
    if (mode == Mode::grid) {
        if (grid_counts.size() != bounds.size()) {
            throw std::invalid_argument("grid needs one point count per axis");
        }
        for (auto c : grid_counts) {
            if (c == 0) throw std::invalid_argument("grid counts must be positive");
        }
    }
}

std::size_t InitialSampler::count(std::size_t requested) const {
    if (mode == Mode::uniform_box) return requested;
    std::size_t total = 1;
    for (auto c : grid_counts) total *= c;
    return total;
}

void InitialSampler::grid_point(std::size_t index, std::span<double> out) const {
    for (std::size_t axis = bounds.size(); axis-- > 0;) {
        const std::size_t c = grid_counts[axis];
        const std::size_t i = index % c;
        index /= c;
        const auto [lo, hi] = bounds[axis];
        out[axis] = c == 1 ? 0.5 * (lo + hi)
                           : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(c - 1);
    }
}

namespace {

struct StepWorkspace {
    explicit StepWorkspace(int n)
        : drift(static_cast<std::size_t>(n)),
          factor(static_cast<std::size_t>(n * n)),
          gauss(static_cast<std::size_t>(n)),
          levy(static_cast<std::size_t>(n)) {}

    std::vector<double> drift;
    std::vector<double> factor;
    std::vector<double> gauss;
    std::vector<double> levy;
};

void step_with(const SdeModel& model, std::span<const double> z, double h, RngStream& rng,
               StepWorkspace& ws, std::span<double> out) {
    const auto n = static_cast<std::size_t>(model.n);
    model.drift(z, ws.drift);
    model.diffusion_factor(z, ws.factor);
    for (double v : ws.drift) {
        if (!std::isfinite(v)) throw std::domain_error("drift is not finite");
    }
    for (double v : ws.factor) {
        if (!std::isfinite(v)) throw std::domain_error("diffusion factor is not finite");
    }
    for (auto& g : ws.gauss) g = rng.normal();

    const bool has_levy = model.levy_intensity > 0.0;
    if (has_levy) {
        if (n == 1) {
            // sigma h^(1/alpha) L_1 with L_1 ~ S_alpha(1, 0, 0); equal in law to sigma L_h
            const double l1 = sample_stable({model.levy_alpha, 1.0, 0.0, 0.0}, rng);
            ws.levy[0] = std::pow(h, 1.0 / model.levy_alpha) * l1;
        } else {
            sample_rotsym_stable_increment(model.levy_alpha, h, rng, ws.levy);
        }
    }

    const double root_h = std::sqrt(h);
    for (std::size_t i = 0; i < n; ++i) {
        double noise = 0.0;
        for (std::size_t j = 0; j < n; ++j) noise += ws.factor[i * n + j] * ws.gauss[j];
        double x = z[i] + ws.drift[i] * h + root_h * noise;
        if (has_levy) x += model.levy_intensity * ws.levy[i];
        out[i] = x;
    }
}

void check_step(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("time step h must be positive");
}

}  // namespace

void euler_step(const SdeModel& model, std::span<const double> z, double h, RngStream& rng,
                std::span<double> out) {
    check_step(h);
    if (z.size() != static_cast<std::size_t>(model.n) || out.size() != z.size()) {
        throw std::invalid_argument("state size does not match model dimension");
    }
    StepWorkspace ws(model.n);
    step_with(model, z, h, rng, ws, out);
}

std::vector<double> euler_step(const SdeModel& model, std::span<const double> z, double h,
                               RngStream& rng) {
    std::vector<double> out(z.size());
    euler_step(model, z, h, rng, out);
    return out;
}

namespace {

void draw_uniform_point(const InitialSampler& sampler, RngStream& rng, std::span<double> out) {
    for (std::size_t a = 0; a < sampler.bounds.size(); ++a) {
        const auto [lo, hi] = sampler.bounds[a];
        out[a] = lo + (hi - lo) * rng.uniform();
    }
}

void generate_block(const SdeModel& model, const InitialSampler& sampler, double h, RngStream rng,
                    std::size_t begin, std::size_t end, PairDataset& data) {
    StepWorkspace ws(model.n);
    const auto n = static_cast<std::size_t>(model.n);
    for (std::size_t j = begin; j < end; ++j) {
        const auto row = static_cast<Eigen::Index>(j);
        std::span<double> z(data.Z.row(row).data(), n);
        std::span<double> x(data.X.row(row).data(), n);
        if (sampler.mode == InitialSampler::Mode::grid) {
            sampler.grid_point(j, z);
        } else {
            draw_uniform_point(sampler, rng, z);
        }
        try {
            step_with(model, z, h, rng, ws, x);
        } catch (const std::domain_error& e) {
            throw std::domain_error(std::string(e.what()) + " at row " + std::to_string(j));
        }
    }
}

}  // namespace

PairDataset generate_pairs(const SdeModel& model, const InitialSampler& sampler, std::size_t M,
                           double h, const RngStream& rng, const GenerateOptions& options) {
    model.validate();
    sampler.validate();
    check_step(h);
    if (sampler.dimension() != model.n) {
        throw std::invalid_argument("sampler dimension does not match model dimension");
    }
    const std::size_t rows = sampler.count(M);
    if (rows < 1) throw std::invalid_argument("sample count M must be at least 1");
    const std::size_t n = static_cast<std::size_t>(model.n);
    const long double bytes = 2.0L * static_cast<long double>(rows) * n * sizeof(double);
    if (bytes > static_cast<long double>(options.memory_budget_bytes)) {
        throw std::length_error("dataset of M = " + std::to_string(rows) + " pairs needs " +
                                std::to_string(static_cast<unsigned long long>(bytes)) +
                                " bytes, above the memory budget of " +
                                std::to_string(options.memory_budget_bytes));
    }

    PairDataset data;
    data.h = h;
    data.Z.resize(static_cast<Eigen::Index>(rows), model.n);
    data.X.resize(static_cast<Eigen::Index>(rows), model.n);

    if (options.trajectory) {
        RngStream stream = rng.derive(0);
        StepWorkspace ws(model.n);
        std::vector<double> state(n);
        if (sampler.mode == InitialSampler::Mode::grid) {
            sampler.grid_point(0, state);
        } else {
            draw_uniform_point(sampler, stream, state);
        }
        for (std::size_t j = 0; j < rows; ++j) {
            const auto row = static_cast<Eigen::Index>(j);
            std::copy(state.begin(), state.end(), data.Z.row(row).data());
            try {
                step_with(model, state, h, stream, ws, {data.X.row(row).data(), n});
            } catch (const std::domain_error& e) {
                throw std::domain_error(std::string(e.what()) + " at row " + std::to_string(j));
            }
            std::copy(data.X.row(row).data(), data.X.row(row).data() + n, state.begin());
        }
        return data;
    }

    const std::size_t blocks = (rows + generate_block_rows - 1) / generate_block_rows;
    auto run_block = [&](std::size_t b) {
        const std::size_t begin = b * generate_block_rows;
        const std::size_t end = std::min(rows, begin + generate_block_rows);
        generate_block(model, sampler, h, rng.derive(b), begin, end, data);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(blocks)));
    if (workers == 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
        return data;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t b = next++; b < blocks; b = next++) {
                try {
                    run_block(b);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return data;
}

}  // namespace levyid
