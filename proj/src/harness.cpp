#include "levyid/harness.hpp"

#include "levyid/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace levyid {

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
}

std::string join_counts(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string fixed(double v, int digits = 4) {
    if (!std::isfinite(v)) return "NA";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string config_line(const Metadata& meta) {
    std::string s = "# config:";
    for (const auto& [k, v] : meta) s += ' ' + k + '=' + v;
    return s;
}

void echo_config(const RunConfig& cfg, std::ostream& out) { out << config_line(cfg.resolved()) << '\n'; }

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

ExampleSetup setup_for(const RunConfig& cfg) {
    auto setup = builtin_model(cfg.model, cfg.alpha, cfg.sigma);
    if (!cfg.grid.empty()) {
        if (static_cast<int>(cfg.grid.size()) != setup.model.n) {
            throw ConfigError("--grid needs " + std::to_string(setup.model.n) + " counts for " + cfg.model);
        }
        setup.sampler = InitialSampler::grid(setup.sampler.bounds, cfg.grid);
    }
    return setup;
}

GenerateOptions generate_options(const RunConfig& cfg) {
    GenerateOptions opt;
    opt.workers = cfg.workers;
    opt.trajectory = cfg.trajectory;
    return opt;
}

PairDataset simulate(const RunConfig& cfg, const ExampleSetup& setup) {
    const RngStream rng(cfg.seed, cfg.stream);
    return generate_pairs(setup.model, setup.sampler, cfg.M.value_or(setup.default_M), cfg.h, rng,
                          generate_options(cfg));
}

PairDataset load_input(const RunConfig& cfg) {
    if (!cfg.in) throw ConfigError("--in is required");
    if (!std::filesystem::exists(*cfg.in)) throw IoError("input file not found: " + cfg.in->string());
    std::optional<double> h;
    if (!std::filesystem::exists(metadata_path(*cfg.in))) h = cfg.h;
    return read_dataset_csv(*cfg.in, h);
}

IdentifyOptions identify_options(const RunConfig& cfg) {
    IdentifyOptions opt;
    opt.annulus = cfg.annulus;
    opt.sparsify = cfg.sparsify;
    return opt;
}

Dictionary dictionary_for(const RunConfig& cfg, int n) {
    if (cfg.dict_file) {
        if (!std::filesystem::exists(*cfg.dict_file)) {
            throw IoError("dictionary file not found: " + cfg.dict_file->string());
        }
        return load_dictionary_file(*cfg.dict_file, n);
    }
    if (cfg.degree) return polynomial_dictionary(n, *cfg.degree);
    auto setup = builtin_model(cfg.model, cfg.alpha, cfg.sigma);
    if (setup.model.n != n) {
        throw ConfigError("dataset has dimension " + std::to_string(n) + " but model " + cfg.model +
                          " has dimension " + std::to_string(setup.model.n) +
                          "; pass --model, --degree or --dict-file");
    }
    return setup.dictionary;
}

std::filesystem::path report_prefix(const RunConfig& cfg, const std::string& fallback_stem) {
    if (cfg.out) return *cfg.out;
    return cfg.out_dir / fallback_stem;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
    if (!f) throw IoError("write failed for " + path.string());
}

Support support_of(const Eigen::RowVectorXd& row) {
    Support s;
    for (Eigen::Index k = 0; k < row.size(); ++k) {
        if (row(k) != 0.0) s.push_back(k);
    }
    return s;
}

std::string support_names(const Dictionary& dict, const Support& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + dict.name(static_cast<std::size_t>(s[i]));
    return out + "}";
}

struct ComponentView {
    std::string label;
    Eigen::RowVectorXd learned;
    Eigen::RowVectorXd dense;
    std::optional<Eigen::RowVectorXd> truth;
};

std::vector<ComponentView> components(const IdentifiedSystem& sys, const std::optional<Matrix>& true_drift,
                                      const std::optional<Matrix>& true_diffusion) {
    std::vector<ComponentView> views;
    for (int i = 0; i < sys.n; ++i) {
        ComponentView v{"b" + std::to_string(i + 1), sys.drift_coeffs.row(i), sys.drift_dense.row(i), {}};
        if (true_drift) v.truth = true_drift->row(i);
        views.push_back(std::move(v));
    }
    for (std::size_t p = 0; p < sys.diffusion_index.size(); ++p) {
        const auto [i, j] = sys.diffusion_index[p];
        const auto r = static_cast<Eigen::Index>(p);
        ComponentView v{"a" + std::to_string(i + 1) + std::to_string(j + 1), sys.diffusion_coeffs.row(r),
                        sys.diffusion_dense.row(r), {}};
        if (true_diffusion) v.truth = true_diffusion->row(r);
        views.push_back(std::move(v));
    }
    return views;
}

// Support must match the truth and every true term must sit within tol of
// its target (published column when available, else the true value).
void check_component(std::vector<CheckResult>& checks, const ExampleSetup& setup, const ComponentView& c,
                     std::optional<std::size_t> column, double tol) {
    const auto& ref = reference_table(setup.number);
    const auto want = support_of(*c.truth);
    const auto got = support_of(c.learned);
    checks.push_back({c.label + " support", got == want,
                      "learned " + support_names(setup.dictionary, got) + " true " +
                          support_names(setup.dictionary, want)});
    for (const auto k : want) {
        const auto basis = static_cast<std::size_t>(k);
        double target = (*c.truth)(k);
        if (column) target = ref.value(c.label, basis, *column).value_or(target);
        const double err = std::abs(c.learned(k) - target);
        checks.push_back({c.label + " " + setup.dictionary.name(basis), err <= tol,
                          "learned " + fixed(c.learned(k)) + " target " + fixed(target) + " |diff| " +
                              fixed(err) + " tol " + fixed(tol, 2)});
    }
}

void check_jump(std::vector<CheckResult>& checks, double value, double target, double tol, const std::string& name) {
    const double err = std::abs(value - target);
    checks.push_back({name, std::isfinite(value) && err <= tol,
                      "estimate " + fixed(value) + " target " + fixed(target) + " tol " + fixed(tol, 2)});
}

template <typename F>
int guarded(const char* what, std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io_failure;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io_failure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io_failure;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io_failure;
    } catch (const StageError& e) {
        err << "error: " << what << " failed at " << e.what() << '\n';
        return exit_estimation_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_io_failure;
    } catch (const std::exception& e) {
        err << "error: " << what << " failed: " << e.what() << '\n';
        return exit_estimation_failure;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

void RunConfig::validate() const {
    static const std::vector<std::string> commands{"simulate", "estimate", "identify", "reproduce", "sweep"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
        throw ConfigError("unknown command '" + command + "'");
    }
    const auto& names = builtin_model_names();
    if (std::find(names.begin(), names.end(), model) == names.end()) {
        throw ConfigError("unknown model '" + model + "'");
    }
    if (!(alpha > 0.0 && alpha < 2.0)) throw ConfigError("--alpha must lie in (0, 2)");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("--sigma must be finite and >= 0");
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("--h must be finite and > 0");
    if (M && *M == 0) throw ConfigError("--M must be positive");
    if (degree && *degree < 0) throw ConfigError("--degree must be >= 0");
    if (workers == 0) throw ConfigError("--workers must be >= 1");
    for (const auto g : grid) {
        if (g == 0) throw ConfigError("--grid counts must be positive");
    }
    try {
        annulus.validate();
        sparsify.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (command == "reproduce" && (example < 1 || example > 4)) {
        throw ConfigError("reproduce takes an example number in 1..4");
    }
    if (command == "simulate" && !out) throw ConfigError("simulate needs --out");
    if ((command == "estimate" || command == "identify") && !in) throw ConfigError(command + " needs --in");
    if (command == "sweep") {
        if (eps_list.empty() || h_list.empty()) throw ConfigError("sweep needs non-empty --eps and --hs lists");
        for (const double e : eps_list) {
            if (!(e > 0.0)) throw ConfigError("--eps values must be positive");
        }
        for (const double v : h_list) {
            if (!(v > 0.0)) throw ConfigError("--hs values must be positive");
        }
    }
}

Metadata RunConfig::resolved() const {
    std::size_t rows = 0;
    if (M) {
        rows = *M;
    } else {
        try {
            rows = builtin_model(model, alpha, sigma).default_M;
        } catch (const std::exception&) {
        }
    }
    Metadata m{{"command", command},
               {"model", model},
               {"dict_file", dict_file ? dict_file->string() : ""},
               {"degree", degree ? std::to_string(*degree) : ""},
               {"example", std::to_string(example)},
               {"alpha", format_double(alpha)},
               {"sigma", format_double(sigma)},
               {"h", format_double(h)},
               {"M", std::to_string(rows)},
               {"seed", std::to_string(seed)},
               {"stream", std::to_string(stream)},
               {"grid", join_counts(grid)},
               {"trajectory", trajectory ? "1" : "0"},
               {"workers", std::to_string(workers)},
               {"epsilon", format_double(annulus.epsilon)},
               {"m", format_double(annulus.m)},
               {"N", std::to_string(annulus.N)},
               {"sparsify", sparsify.enabled ? "1" : "0"},
               {"folds", std::to_string(sparsify.folds)},
               {"thresholds", join_doubles(sparsify.thresholds)},
               {"in", in ? in->string() : ""},
               {"out", out ? out->string() : ""},
               {"out_dir", out_dir.string()},
               {"eps", join_doubles(eps_list)},
               {"hs", join_doubles(h_list)}};
    return m;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded("simulate", err, [&] {
        cfg.validate();
        echo_config(cfg, out);
        const auto setup = setup_for(cfg);
        const auto data = simulate(cfg, setup);
        save_dataset(*cfg.out, data, cfg.resolved());
        out << "M=" << data.M() << '\n' << "h=" << format_double(data.h) << '\n' << "out=" << cfg.out->string() << '\n';
        return int{exit_ok};
    });
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded("estimate", err, [&] {
        cfg.validate();
        echo_config(cfg, out);
        const auto data = load_input(cfg);
        JumpEstimate est;
        try {
            est = estimate_jump_parameters(data, cfg.annulus);
        } catch (const std::domain_error& e) {
            throw StageError("jump", e.what());
        }
        print_warnings(est.warnings, err);
        for (const auto& [k, v] : jump_summary(est)) out << k << '=' << v << '\n';
        if (cfg.out) {
            write_file(*cfg.out, config_line(cfg.resolved()) + '\n' + jump_csv(est));
            out << "out=" << cfg.out->string() << '\n';
        }
        return int{exit_ok};
    });
}

int cmd_identify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded("identify", err, [&] {
        cfg.validate();
        echo_config(cfg, out);
        const auto data = load_input(cfg);
        const auto dict = dictionary_for(cfg, data.n());
        const auto sys = identify(data, dict, identify_options(cfg));
        print_warnings(sys.diagnostics.warnings, err);
        const auto prefix = report_prefix(cfg, cfg.in->stem().string());
        const auto files = write_identification_report(prefix, sys, cfg.resolved());
        out << "alpha_hat=" << format_double(sys.alpha_hat) << '\n';
        out << "sigma_hat=" << format_double(sys.sigma_hat) << '\n';
        out << "M_hat=" << sys.diagnostics.M_hat << '\n';
        for (const auto& c : components(sys, std::nullopt, std::nullopt)) {
            out << c.label << ":";
            for (Eigen::Index k = 0; k < c.learned.size(); ++k) {
                if (c.learned(k) != 0.0) {
                    out << ' ' << format_double(c.learned(k)) << '*' << sys.dictionary.name(static_cast<std::size_t>(k));
                }
            }
            out << '\n';
        }
        for (const auto& f : files) out << "wrote " << f.string() << '\n';
        return int{exit_ok};
    });
}

int cmd_reproduce(const RunConfig& cfg_in, std::ostream& out, std::ostream& err) {
    return guarded("reproduce", err, [&] {
        RunConfig cfg = cfg_in;
        if (cfg.example >= 1 && cfg.example <= 4) cfg.model = builtin_model_names()[static_cast<std::size_t>(cfg.example - 1)];
        cfg.validate();
        echo_config(cfg, out);
        const auto setup = setup_for(cfg);
        const auto data = simulate(cfg, setup);
        out << "example " << setup.number << " (" << setup.name << "), alpha=" << format_double(cfg.alpha)
            << ", M=" << data.M() << ", h=" << format_double(cfg.h) << '\n';

        const auto sys = identify(data, setup.dictionary, identify_options(cfg));
        print_warnings(sys.diagnostics.warnings, err);

        const auto column = ReferenceTable::column(cfg.alpha);
        const auto& ref = reference_table(setup.number);
        out << "\njump parameters\n";
        out << "  quantity   true      published   learned\n";
        out << "  alpha      " << fixed(cfg.alpha) << "    " << (column ? fixed(ref.alpha_hat[*column]) : "    -") << "      "
            << fixed(sys.alpha_hat) << '\n';
        out << "  sigma      " << fixed(cfg.sigma) << "    " << (column ? fixed(ref.sigma_hat[*column]) : "    -") << "      "
            << fixed(sys.sigma_hat) << '\n';

        for (const auto& c : components(sys, setup.true_drift, setup.true_diffusion)) {
            out << '\n' << c.label << '\n';
            out << "  basis                          true      published   learned     dense\n";
            for (std::size_t k = 0; k < setup.dictionary.size(); ++k) {
                const auto i = static_cast<Eigen::Index>(k);
                char line[256];
                std::optional<double> pub;
                if (column && setup.number <= 3) pub = ref.value(c.label, k, *column).value_or(0.0);
                std::snprintf(line, sizeof line, "  %-30s %-9s %-11s %-11s %s\n", setup.dictionary.name(k).c_str(),
                              c.truth ? fixed((*c.truth)(i)).c_str() : "-", pub ? fixed(*pub).c_str() : "-",
                              fixed(c.learned(i)).c_str(), fixed(c.dense(i)).c_str());
                out << line;
            }
        }

        std::filesystem::create_directories(cfg.out_dir);
        const auto prefix = cfg.out_dir / ("example" + std::to_string(setup.number));
        TruthTables truth{setup.true_drift, setup.true_diffusion};
        auto files = write_identification_report(prefix, sys, cfg.resolved(), truth);
        if (setup.number == 4) {
            auto curves = prefix;
            curves += "_curves.csv";
            write_file(curves, config_line(cfg.resolved()) + '\n' + gene_regulatory_curves_csv(setup, sys));
            files.push_back(curves);
        }

        out << "\nchecks\n";
        std::size_t failed = 0;
        for (const auto& c : example_checks(setup, cfg.alpha, sys)) {
            out << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
            failed += c.pass ? 0 : 1;
        }
        out << "checks_failed=" << failed << '\n';
        for (const auto& f : files) out << "wrote " << f.string() << '\n';
        return int{exit_ok};
    });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded("sweep", err, [&] {
        cfg.validate();
        echo_config(cfg, out);
        const auto setup = setup_for(cfg);
        const RngStream rng(cfg.seed, cfg.stream);
        const auto cells = sensitivity_sweep(setup.model, setup.sampler, cfg.eps_list, cfg.h_list, cfg.annulus,
                                             cfg.M.value_or(setup.default_M), rng, generate_options(cfg));
        std::ostringstream csv;
        csv << "epsilon";
        for (const double h : cfg.h_list) csv << ",h=" << format_double(h);
        csv << '\n';
        const std::size_t ne = cfg.eps_list.size();
        for (std::size_t e = 0; e < ne; ++e) {
            csv << format_double(cfg.eps_list[e]);
            for (std::size_t j = 0; j < cfg.h_list.size(); ++j) {
                const auto& cell = cells[j * ne + e];
                csv << ',' << (cell.alpha_hat ? format_double(*cell.alpha_hat) : "NA");
                if (!cell.error.empty()) {
                    err << "warning: cell epsilon=" << format_double(cell.epsilon) << " h=" << format_double(cell.h)
                        << ": " << cell.error << '\n';
                }
            }
            csv << '\n';
        }
        out << csv.str();
        if (cfg.out) {
            write_file(*cfg.out, config_line(cfg.resolved()) + '\n' + csv.str());
            out << "wrote " << cfg.out->string() << '\n';
        }
        return int{exit_ok};
    });
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == "simulate") return cmd_simulate(cfg, out, err);
    if (cfg.command == "estimate") return cmd_estimate(cfg, out, err);
    if (cfg.command == "identify") return cmd_identify(cfg, out, err);
    if (cfg.command == "reproduce") return cmd_reproduce(cfg, out, err);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
    err << "error: unknown command '" << cfg.command << "'\n";
    return exit_io_failure;
}

// ---------------------------------------------------------------------------
// Reference values

std::optional<std::size_t> ReferenceTable::column(double alpha) {
    if (alpha == 0.5) return 0;
    if (alpha == 1.0) return 1;
    if (alpha == 1.5) return 2;
    return std::nullopt;
}

std::optional<double> ReferenceTable::value(const std::string& component, std::size_t basis,
                                            std::size_t column) const {
    for (const auto& e : entries) {
        if (e.component == component && e.basis == basis) return e.value.at(column);
    }
    return std::nullopt;
}

const ReferenceTable& reference_table(int example) {
    // Learned coefficients reported for the published runs; basis indices
    // follow the graded-lex polynomial dictionaries.
    static const std::map<int, ReferenceTable> tables{
        {1,
         {1,
          {0.5106, 0.9987, 1.4987},
          {2.0044, 2.0068, 2.0196},
          {{"b1", 1, {3.9669, 3.9968, 4.0606}},
           {"b1", 3, {-0.9931, -0.9972, -1.0093}},
           {"a11", 0, {0.9533, 0.9895, 0.9068}},
           {"a11", 1, {1.9830, 1.9809, 1.9723}},
           {"a11", 2, {1.0193, 1.0201, 1.0146}}}}},
        {2,
         {2,
          {0.5038, 1.0013, 1.5036},
          {1.9806, 2.0025, 2.0231},
          {{"b1", 1, {1.0135, 0.9808, 0.9689}},
           {"b1", 6, {-1.0051, -0.9947, -0.9922}},
           {"b1", 8, {-5.0021, -4.9839, -4.9751}},
           {"b2", 2, {-1.0046, -1.0010, -1.0008}},
           {"b2", 7, {-0.9997, -0.9961, -0.9908}},
           {"a11", 0, {1.9514, 1.9395, 1.8497}},
           {"a11", 2, {1.9951, 1.9940, 1.9883}},
           {"a11", 5, {1.1313, 1.1289, 1.1268}},
           {"a12", 1, {0.9976, 0.9966, 0.9976}},
           {"a22", 3, {1.0046, 0.9976, 0.9616}}}}},
        {3,
         {3,
          {0.5031, 1.0006, 1.5145},
          {1.9916, 2.0123, 2.0238},
          {{"b1", 1, {-9.9820, -9.9716, -9.9482}},
           {"b1", 2, {9.9839, 9.9570, 9.9398}},
           {"b2", 1, {3.9856, 3.9841, 3.9885}},
           {"b2", 2, {-0.9962, -1.0000, -1.0005}},
           {"b2", 6, {-1.0017, -1.0029, -0.9994}},
           {"b3", 3, {-2.6633, -2.6577, -2.6521}},
           {"b3", 5, {0.9960, 0.9997, 1.0006}},
           {"a11", 0, {2.0092, 2.2601, 2.0997}},
           {"a11", 3, {1.9961, 1.9893, 1.9863}},
           {"a11", 4, {0.0998, 0.0, 0.0}},
           {"a11", 5, {-0.1996, 0.0, 0.0}},
           {"a11", 7, {0.0996, 0.0, 0.0}},
           {"a11", 9, {0.9977, 0.9935, 0.9927}},
           {"a12", 2, {0.9977, 0.9954, 0.9935}},
           {"a22", 7, {1.0127, 1.0060, 0.9385}},
           {"a33", 4, {1.0076, 1.0028, 0.9327}}}}},
        {4, {4, {0.4939, 1.0175, 1.5199}, {2.0674, 1.9651, 2.0669}, {}}},
    };
    const auto it = tables.find(example);
    if (it == tables.end()) throw std::out_of_range("no reference table for example " + std::to_string(example));
    return it->second;
}

// ---------------------------------------------------------------------------
// Checks and curves

double relative_l2_error(const std::function<double(double)>& f, const std::function<double(double)>& g,
                         double lo, double hi, std::size_t points) {
    if (!(hi > lo) || points == 0) throw std::invalid_argument("relative_l2_error needs lo < hi and points > 0");
    const double dx = (hi - lo) / static_cast<double>(points);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + (static_cast<double>(i) + 0.5) * dx;
        const double gv = g(x);
        const double d = f(x) - gv;
        num += d * d;
        den += gv * gv;
    }
    if (den == 0.0) throw std::domain_error("reference function vanishes on the interval");
    return std::sqrt(num / den);
}

std::vector<CheckResult> example_checks(const ExampleSetup& setup, double alpha, const IdentifiedSystem& sys) {
    std::vector<CheckResult> checks;
    const double sigma = setup.model.levy_intensity;
    const auto column = ReferenceTable::column(alpha);
    const auto views = components(sys, setup.true_drift, setup.true_diffusion);
    auto view = [&](const std::string& label) -> const ComponentView& {
        for (const auto& v : views) {
            if (v.label == label) return v;
        }
        throw std::out_of_range("no component " + label);
    };

    switch (setup.number) {
        case 1: {
            check_jump(checks, sys.alpha_hat, alpha, 0.05, "alpha_hat");
            check_jump(checks, sys.sigma_hat, sigma, 0.10, "sigma_hat");
            const auto& b = view("b1");
            const auto bs = support_of(b.learned);
            checks.push_back({"b1 support", bs == Support{1, 3}, "learned " + support_names(setup.dictionary, bs)});
            checks.push_back({"b1 x1", std::abs(b.learned(1) - 4.0) <= 0.2, "learned " + fixed(b.learned(1)) + " tol 0.20"});
            checks.push_back({"b1 x1^3", std::abs(b.learned(3) + 1.0) <= 0.06, "learned " + fixed(b.learned(3)) + " tol 0.06"});
            const auto& a = view("a11");
            const auto as = support_of(a.learned);
            checks.push_back({"a11 support", as == Support{0, 1, 2}, "learned " + support_names(setup.dictionary, as)});
            const double target[3] = {1.0, 2.0, 1.0};
            for (Eigen::Index k = 0; k < 3; ++k) {
                const auto name = "a11 " + setup.dictionary.name(static_cast<std::size_t>(k));
                checks.push_back({name, std::abs(a.learned(k) - target[k]) <= 0.20,
                                  "learned " + fixed(a.learned(k)) + " tol 0.20"});
            }
            break;
        }
        case 2: {
            check_jump(checks, sys.alpha_hat, alpha, 0.05, "alpha_hat");
            check_jump(checks, sys.sigma_hat, sigma, 0.10, "sigma_hat");
            check_component(checks, setup, view("b1"), column, 0.15);
            check_component(checks, setup, view("b2"), column, 0.15);
            const auto& a12 = view("a12");
            checks.push_back({"a12 x1", std::abs(a12.learned(1) - 1.0) <= 0.05,
                              "learned " + fixed(a12.learned(1)) + " tol 0.05"});
            break;
        }
        case 3: {
            check_jump(checks, sys.alpha_hat, alpha, 0.08, "alpha_hat");
            // Every coefficient, zeros included, against the published column.
            for (const char* label : {"b1", "b2", "b3"}) {
                const auto& c = view(label);
                for (Eigen::Index k = 0; k < c.learned.size(); ++k) {
                    const auto basis = static_cast<std::size_t>(k);
                    double target = (*c.truth)(k);
                    if (column) target = reference_table(3).value(label, basis, *column).value_or(0.0);
                    const double err = std::abs(c.learned(k) - target);
                    if (target == 0.0 && err <= 0.25) continue;
                    checks.push_back({std::string(label) + " " + setup.dictionary.name(basis), err <= 0.25,
                                      "learned " + fixed(c.learned(k)) + " target " + fixed(target) + " tol 0.25"});
                }
            }
            for (const char* c : {"a13", "a23"}) {
                const auto s = support_of(view(c).learned);
                checks.push_back({std::string(c) + " zero", s.empty(), "learned " + support_names(setup.dictionary, s)});
            }
            break;
        }
        case 4: {
            auto drift_true = [&](double x) {
                double v = 0.0;
                setup.model.drift(std::span<const double>(&x, 1), std::span<double>(&v, 1));
                return v;
            };
            auto diff_true = [&](double x) { return setup.model.diffusion_matrix(std::span<const double>(&x, 1))(0, 0); };
            auto drift_learned = [&](double x) { return sys.drift(0, std::span<const double>(&x, 1)); };
            auto diff_learned = [&](double x) { return sys.diffusion(0, 0, std::span<const double>(&x, 1)); };
            const double eb = relative_l2_error(drift_learned, drift_true, 0.2, 4.8);
            const double ea = relative_l2_error(diff_learned, diff_true, 0.2, 4.8);
            checks.push_back({"drift relative L2", eb <= 0.10, "error " + fixed(eb) + " tol 0.10"});
            checks.push_back({"diffusion relative L2", ea <= 0.10, "error " + fixed(ea) + " tol 0.10"});
            break;
        }
        default:
            throw std::out_of_range("no checks for example " + std::to_string(setup.number));
    }
    return checks;
}

std::string gene_regulatory_curves_csv(const ExampleSetup& setup, const IdentifiedSystem& sys, std::size_t points) {
    if (points < 2) throw std::invalid_argument("curve needs at least 2 points");
    std::ostringstream s;
    s << "x,drift_true,drift_learned,diffusion_true,diffusion_learned\n";
    for (std::size_t i = 0; i < points; ++i) {
        double x = 5.0 * static_cast<double>(i) / static_cast<double>(points - 1);
        const std::span<const double> xs(&x, 1);
        double b = 0.0;
        setup.model.drift(xs, std::span<double>(&b, 1));
        s << format_double(x) << ',' << format_double(b) << ',' << format_double(sys.drift(0, xs)) << ','
          << format_double(setup.model.diffusion_matrix(xs)(0, 0)) << ',' << format_double(sys.diffusion(0, 0, xs))
          << '\n';
    }
    return s.str();
}

// ---------------------------------------------------------------------------
// List parsing

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + item + "'");
        }
        if (used != item.size()) throw ConfigError("not a number: '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError("empty list");
    return values;
}

std::size_t parse_count(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a count: '" + text + "'");
    }
    if (used != text.size() || !(v >= 0.0) || v != std::floor(v) || v > 1e15) {
        throw ConfigError("not a count: '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
    std::vector<std::size_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_count(item));
    if (values.empty()) throw ConfigError("empty list");
    return values;
}

}  // namespace levyid
