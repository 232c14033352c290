#include "levyid/coefficient_estimator.hpp"
#include "levyid/jump_estimator.hpp"
#include "levyid/models.hpp"
#include "levyid/stable.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

namespace py = pybind11;
using namespace levyid;

namespace {

PairDataset make_dataset(const RowMatrix& Z, const RowMatrix& X, double h) {
    PairDataset d{Z, X, h};
    d.validate();
    return d;
}

AnnulusConfig annulus(double epsilon, double m, int N) {
    AnnulusConfig cfg{epsilon, m, N};
    cfg.validate();
    return cfg;
}

py::dict jump_dict(const JumpEstimate& e) {
    py::dict d;
    d["alpha_hat"] = e.alpha_hat;
    d["sigma_hat"] = e.sigma_hat;
    d["alpha_per_k"] = e.alpha_per_k;
    d["sigma_per_k"] = e.sigma_per_k;
    d["counts"] = e.counts;
    d["warnings"] = e.warnings;
    return d;
}

py::tuple simulate(const std::string& model, double alpha, double sigma, std::optional<std::size_t> M, double h,
                   std::uint64_t seed, std::uint64_t stream, std::optional<std::vector<std::size_t>> grid,
                   bool trajectory, unsigned workers) {
    auto setup = builtin_model(model, alpha, sigma);
    if (grid) setup.sampler = InitialSampler::grid(setup.sampler.bounds, *grid);
    GenerateOptions opt;
    opt.trajectory = trajectory;
    opt.workers = workers;
    PairDataset data;
    {
        py::gil_scoped_release release;
        data = generate_pairs(setup.model, setup.sampler, M.value_or(setup.default_M), h, RngStream(seed, stream), opt);
    }
    return py::make_tuple(std::move(data.Z), std::move(data.X));
}

py::dict identify_py(const RowMatrix& Z, const RowMatrix& X, double h,
                     std::variant<int, std::vector<std::string>> dictionary, double epsilon, double m, int N,
                     bool sparsify, int folds) {
    const auto data = make_dataset(Z, X, h);
    const Dictionary dict = std::holds_alternative<int>(dictionary)
                                ? polynomial_dictionary(data.n(), std::get<int>(dictionary))
                                : custom_dictionary(std::get<std::vector<std::string>>(dictionary), data.n());
    IdentifyOptions opt;
    opt.annulus = annulus(epsilon, m, N);
    opt.sparsify.enabled = sparsify;
    opt.sparsify.folds = folds;
    const IdentifiedSystem sys = [&] {
        py::gil_scoped_release release;
        return identify(data, dict, opt);
    }();
    py::dict d;
    d["n"] = sys.n;
    d["alpha_hat"] = sys.alpha_hat;
    d["sigma_hat"] = sys.sigma_hat;
    d["jump"] = sys.jump ? py::object(jump_dict(*sys.jump)) : py::none();
    d["bias_correction"] = sys.correction.S;
    d["basis"] = sys.dictionary.names();
    d["drift"] = sys.drift_coeffs;
    d["diffusion"] = sys.diffusion_coeffs;
    d["drift_dense"] = sys.drift_dense;
    d["diffusion_dense"] = sys.diffusion_dense;
    d["diffusion_index"] = sys.diffusion_index;
    d["M_hat"] = sys.diagnostics.M_hat;
    d["retention"] = sys.diagnostics.retention;
    d["condition_number"] = sys.diagnostics.condition_number;
    d["warnings"] = sys.diagnostics.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stable-driven SDE identification from paired samples";

    py::register_exception<StageError>(m, "StageError", PyExc_RuntimeError);

    m.def("builtin_models", &builtin_model_names);

    m.def("simulate", &simulate, py::arg("model"), py::arg("alpha") = 1.0, py::arg("sigma") = 2.0,
          py::arg("M") = py::none(), py::arg("h") = 1e-3, py::arg("seed") = 0, py::arg("stream") = 0,
          py::arg("grid") = py::none(), py::arg("trajectory") = false, py::arg("workers") = 1,
          "Simulate (Z, X) sample pairs from a built-in model.");

    m.def(
        "sample_stable",
        [](double alpha, double scale, double skewness, double shift, std::size_t size, std::uint64_t seed) {
            const StableParams p{alpha, scale, skewness, shift};
            p.validate();
            RngStream rng(seed);
            Vector out(static_cast<Eigen::Index>(size));
            for (auto& v : out) v = sample_stable(p, rng);
            return out;
        },
        py::arg("alpha"), py::arg("scale") = 1.0, py::arg("skewness") = 0.0, py::arg("shift") = 0.0,
        py::arg("size") = 1, py::arg("seed") = 0);

    m.def("levy_kernel_constant", &levy_kernel_constant, py::arg("n"), py::arg("alpha"));

    m.def(
        "estimate_jump",
        [](const RowMatrix& Z, const RowMatrix& X, double h, double epsilon, double m, int N) {
            return jump_dict(estimate_jump_parameters(make_dataset(Z, X, h), annulus(epsilon, m, N)));
        },
        py::arg("Z"), py::arg("X"), py::arg("h"), py::arg("epsilon") = 1.0, py::arg("m") = 5.0, py::arg("N") = 2);

    m.def(
        "bias_correction",
        [](double alpha, double sigma, double epsilon, int n) { return bias_correction(alpha, sigma, epsilon, n).S; },
        py::arg("alpha"), py::arg("sigma"), py::arg("epsilon"), py::arg("n"));

    m.def("identify", &identify_py, py::arg("Z"), py::arg("X"), py::arg("h"), py::arg("dictionary") = 3,
          py::arg("epsilon") = 1.0, py::arg("m") = 5.0, py::arg("N") = 2, py::arg("sparsify") = true,
          py::arg("folds") = 5,
          "Identify drift and diffusion expansions. `dictionary` is a polynomial degree or a list of expressions.");

    m.def(
        "example_dictionary",
        [](int number) { return example_setup(number, 1.0).dictionary.names(); }, py::arg("number"));
}
