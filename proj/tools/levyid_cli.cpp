#include "levyid/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using levyid::RunConfig;

void add_model_options(CLI::App* cmd, RunConfig& cfg, std::string& M_text, std::string& grid_text) {
    cmd->add_option("--model", cfg.model, "built-in model name");
    cmd->add_option("--alpha", cfg.alpha, "stability index in (0, 2)");
    cmd->add_option("--sigma", cfg.sigma, "Levy noise intensity");
    cmd->add_option("--h", cfg.h, "time step");
    cmd->add_option("--M", M_text, "sample count (1e6 notation accepted)");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--stream", cfg.stream, "random stream id");
    cmd->add_option("--grid", grid_text, "grid counts per axis, e.g. 100,100,100");
    cmd->add_flag("--trajectory", cfg.trajectory, "chain steps along one path");
    cmd->add_option("--workers", cfg.workers, "simulation threads");
}

void add_estimator_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--epsilon", cfg.annulus.epsilon, "inner annulus radius");
    cmd->add_option("--m", cfg.annulus.m, "annulus growth ratio");
    cmd->add_option("--N", cfg.annulus.N, "number of outer annuli");
}

void add_regression_options(CLI::App* cmd, RunConfig& cfg, std::string& thresholds_text, bool& no_sparsify) {
    cmd->add_option("--dict-file", cfg.dict_file, "basis expressions, one per line");
    cmd->add_option("--degree", cfg.degree, "polynomial dictionary degree");
    cmd->add_option("--folds", cfg.sparsify.folds, "cross-validation folds");
    cmd->add_option("--thresholds", thresholds_text, "relative threshold grid, ascending");
    cmd->add_flag("--no-sparsify", no_sparsify, "report dense coefficients only");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identify and simulate SDEs with Brownian and alpha-stable Levy noise"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    RunConfig cfg;
    std::string M_text, grid_text, thresholds_text, eps_text, hs_text;
    bool no_sparsify = false;

    auto* sim = app.add_subcommand("simulate", "generate one-step sample pairs");
    add_model_options(sim, cfg, M_text, grid_text);
    sim->add_option("--out", cfg.out, "dataset CSV path")->required();

    auto* est = app.add_subcommand("estimate", "estimate alpha and sigma from a dataset");
    est->add_option("--in", cfg.in, "dataset CSV")->required();
    est->add_option("--h", cfg.h, "time step when the dataset has no sidecar");
    est->add_option("--out", cfg.out, "jump estimate CSV");
    add_estimator_options(est, cfg);

    auto* idf = app.add_subcommand("identify", "full identification of a dataset");
    idf->add_option("--in", cfg.in, "dataset CSV")->required();
    idf->add_option("--h", cfg.h, "time step when the dataset has no sidecar");
    idf->add_option("--model", cfg.model, "built-in model whose dictionary to use");
    idf->add_option("--out", cfg.out, "report file prefix");
    idf->add_option("--out-dir", cfg.out_dir, "report directory when --out is absent");
    add_estimator_options(idf, cfg);
    add_regression_options(idf, cfg, thresholds_text, no_sparsify);

    auto* rep = app.add_subcommand("reproduce", "rerun a built-in example and compare");
    rep->add_option("example", cfg.example, "example number 1..4")->required();
    add_model_options(rep, cfg, M_text, grid_text);
    rep->add_option("--out-dir", cfg.out_dir, "report directory");
    add_estimator_options(rep, cfg);
    add_regression_options(rep, cfg, thresholds_text, no_sparsify);

    auto* swp = app.add_subcommand("sweep", "alpha estimate over an epsilon x h grid");
    add_model_options(swp, cfg, M_text, grid_text);
    swp->add_option("--eps", eps_text, "epsilon list")->required();
    swp->add_option("--hs", hs_text, "time step list")->required();
    swp->add_option("--out", cfg.out, "sweep CSV path");
    add_estimator_options(swp, cfg);

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (!M_text.empty()) cfg.M = levyid::parse_count(M_text);
        if (!grid_text.empty()) cfg.grid = levyid::parse_count_list(grid_text);
        if (!thresholds_text.empty()) cfg.sparsify.thresholds = levyid::parse_double_list(thresholds_text);
        if (!eps_text.empty()) cfg.eps_list = levyid::parse_double_list(eps_text);
        if (!hs_text.empty()) cfg.h_list = levyid::parse_double_list(hs_text);
        cfg.sparsify.enabled = !no_sparsify;
    } catch (const levyid::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return levyid::exit_io_failure;
    }
    return levyid::run_command(cfg, std::cout, std::cerr);
}
