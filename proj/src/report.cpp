#include "levyid/report.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace levyid {

namespace {

std::string num(double v) { return std::isfinite(v) ? format_double(v) : "NA"; }

nlohmann::json json_number(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

std::string config_comment(const Metadata& config) {
    std::ostringstream s;
    s << "# config:";
    for (const auto& [k, v] : config) s << ' ' << k << '=' << v;
    s << '\n';
    return s.str();
}

}  // namespace

Metadata jump_summary(const JumpEstimate& est) {
    Metadata kv{{"alpha_hat", num(est.alpha_hat)},
                {"sigma_hat", num(est.sigma_hat)},
                {"M", std::to_string(est.M)},
                {"h", format_double(est.h)},
                {"n", std::to_string(est.n)},
                {"epsilon", format_double(est.config.epsilon)},
                {"m", format_double(est.config.m)},
                {"N", std::to_string(est.config.N)}};
    for (std::size_t k = 0; k < est.alpha_per_k.size(); ++k) {
        kv.emplace_back("alpha_k" + std::to_string(k + 1), num(est.alpha_per_k[k]));
    }
    for (std::size_t k = 0; k < est.sigma_per_k.size(); ++k) {
        kv.emplace_back("sigma_k" + std::to_string(k), num(est.sigma_per_k[k]));
    }
    for (std::size_t k = 0; k < est.counts.size(); ++k) {
        kv.emplace_back("n" + std::to_string(k), std::to_string(est.counts[k]));
    }
    return kv;
}

std::string jump_csv(const JumpEstimate& est) {
    std::ostringstream header;
    std::ostringstream row;
    header << "alpha_hat,sigma_hat";
    row << num(est.alpha_hat) << ',' << num(est.sigma_hat);
    for (std::size_t k = 0; k < est.alpha_per_k.size(); ++k) {
        header << ",alpha_k" << k + 1;
        row << ',' << num(est.alpha_per_k[k]);
    }
    for (std::size_t k = 0; k < est.sigma_per_k.size(); ++k) {
        header << ",sigma_k" << k;
        row << ',' << num(est.sigma_per_k[k]);
    }
    for (std::size_t k = 0; k < est.counts.size(); ++k) {
        header << ",n" << k;
        row << ',' << est.counts[k];
    }
    return header.str() + '\n' + row.str() + '\n';
}

std::string coefficient_csv(const Dictionary& dict, const Eigen::RowVectorXd& learned,
                            const Eigen::RowVectorXd& dense,
                            const std::optional<Eigen::RowVectorXd>& truth) {
    std::ostringstream s;
    s << "basis,true,learned,dense\n";
    for (std::size_t k = 0; k < dict.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        s << '"' << dict.name(k) << "\",";
        if (truth) s << format_double((*truth)(i));
        s << ',' << format_double(learned(i)) << ',' << format_double(dense(i)) << '\n';
    }
    return s.str();
}

std::string identified_system_json(const IdentifiedSystem& sys, const Metadata& config) {
    using nlohmann::json;
    json doc;
    json cfg = json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    doc["config"] = cfg;
    doc["n"] = sys.n;
    doc["alpha_hat"] = json_number(sys.alpha_hat);
    doc["sigma_hat"] = json_number(sys.sigma_hat);
    if (sys.jump) {
        json jump;
        for (const auto& [k, v] : jump_summary(*sys.jump)) jump[k] = v;
        doc["jump"] = jump;
    }
    doc["basis"] = sys.dictionary.names();

    auto component = [&](const std::string& label, const Eigen::RowVectorXd& learned,
                         const Eigen::RowVectorXd& dense) {
        json c;
        c["label"] = label;
        c["learned"] = std::vector<double>(learned.data(), learned.data() + learned.size());
        c["dense"] = std::vector<double>(dense.data(), dense.data() + dense.size());
        return c;
    };
    json drift = json::array();
    for (int i = 0; i < sys.n; ++i) {
        drift.push_back(component("b" + std::to_string(i + 1), sys.drift_coeffs.row(i), sys.drift_dense.row(i)));
    }
    doc["drift"] = drift;
    json diffusion = json::array();
    for (std::size_t p = 0; p < sys.diffusion_index.size(); ++p) {
        const auto [i, j] = sys.diffusion_index[p];
        const auto r = static_cast<Eigen::Index>(p);
        diffusion.push_back(component("a" + std::to_string(i + 1) + std::to_string(j + 1),
                                      sys.diffusion_coeffs.row(r), sys.diffusion_dense.row(r)));
    }
    doc["diffusion"] = diffusion;
    doc["bias_correction"] = json_number(sys.correction.S.rows() ? sys.correction.S(0, 0) : 0.0);

    const auto& d = sys.diagnostics;
    json diag;
    diag["M"] = d.M;
    diag["M_hat"] = d.M_hat;
    diag["retention"] = d.retention;
    diag["condition_number"] = json_number(d.condition_number);
    diag["rank"] = d.rank;
    diag["rank_deficient"] = d.rank_deficient;
    diag["min_diffusion_eigenvalue"] = json_number(d.min_diffusion_eigenvalue);
    diag["warnings"] = d.warnings;
    json comps = json::array();
    for (const auto& c : d.components) {
        json jc;
        jc["label"] = c.label;
        jc["residual_rms"] = json_number(c.residual_rms);
        if (c.cv) {
            json cands = json::array();
            for (const auto& cand : c.cv->candidates) {
                cands.push_back({{"support", cand.support},
                                 {"thresholds", cand.thresholds},
                                 {"score", json_number(cand.score)},
                                 {"score_se", json_number(cand.score_se)}});
            }
            jc["cv"] = {{"candidates", cands}, {"best", c.cv->best}, {"selected", c.cv->selected}};
        }
        comps.push_back(jc);
    }
    diag["components"] = comps;
    doc["diagnostics"] = diag;
    return doc.dump(2) + '\n';
}

std::vector<std::filesystem::path> write_identification_report(const std::filesystem::path& prefix,
                                                               const IdentifiedSystem& sys,
                                                               const Metadata& config,
                                                               const TruthTables& truth) {
    std::vector<std::filesystem::path> written;
    auto target = [&](const std::string& suffix) {
        auto p = prefix;
        p += suffix;
        written.push_back(p);
        return p;
    };

    std::ostringstream txt;
    for (const auto& [k, v] : config) txt << "config." << k << '=' << v << '\n';
    txt << "alpha_hat=" << num(sys.alpha_hat) << '\n';
    txt << "sigma_hat=" << num(sys.sigma_hat) << '\n';
    if (sys.jump) {
        for (const auto& [k, v] : jump_summary(*sys.jump)) {
            if (k != "alpha_hat" && k != "sigma_hat") txt << "jump." << k << '=' << v << '\n';
        }
    }
    const auto& d = sys.diagnostics;
    txt << "M_hat=" << d.M_hat << '\n';
    txt << "retention=" << format_double(d.retention) << '\n';
    txt << "bias_correction=" << format_double(sys.correction.S(0, 0)) << '\n';
    txt << "condition_number=" << num(d.condition_number) << '\n';
    txt << "rank=" << d.rank << '\n';
    txt << "min_diffusion_eigenvalue=" << num(d.min_diffusion_eigenvalue) << '\n';
    for (const auto& c : d.components) {
        txt << "residual_rms." << c.label << '=' << num(c.residual_rms) << '\n';
    }
    for (std::size_t i = 0; i < d.warnings.size(); ++i) txt << "warning." << i << '=' << d.warnings[i] << '\n';
    for (std::size_t k = 0; k < sys.dictionary.size(); ++k) {
        const auto col = static_cast<Eigen::Index>(k);
        txt << "coef." << sys.dictionary.name(k) << '=';
        for (int i = 0; i < sys.n; ++i) txt << (i ? "," : "") << "b" << i + 1 << ':' << format_double(sys.drift_coeffs(i, col));
        for (std::size_t p = 0; p < sys.diffusion_index.size(); ++p) {
            const auto [a, b] = sys.diffusion_index[p];
            txt << ",a" << a + 1 << b + 1 << ':' << format_double(sys.diffusion_coeffs(static_cast<Eigen::Index>(p), col));
        }
        txt << '\n';
    }
    write_text(target("_report.txt"), txt.str());
    write_text(target("_report.json"), identified_system_json(sys, config));
    if (sys.jump) write_text(target("_jump.csv"), config_comment(config) + jump_csv(*sys.jump));

    for (int i = 0; i < sys.n; ++i) {
        std::optional<Eigen::RowVectorXd> t;
        if (truth.drift) t = truth.drift->row(i);
        write_text(target("_b" + std::to_string(i + 1) + ".csv"),
                   config_comment(config) +
                       coefficient_csv(sys.dictionary, sys.drift_coeffs.row(i), sys.drift_dense.row(i), t));
    }
    for (std::size_t p = 0; p < sys.diffusion_index.size(); ++p) {
        const auto [a, b] = sys.diffusion_index[p];
        const auto r = static_cast<Eigen::Index>(p);
        std::optional<Eigen::RowVectorXd> t;
        if (truth.diffusion) t = truth.diffusion->row(r);
        write_text(target("_a" + std::to_string(a + 1) + std::to_string(b + 1) + ".csv"),
                   config_comment(config) + coefficient_csv(sys.dictionary, sys.diffusion_coeffs.row(r),
                                                            sys.diffusion_dense.row(r), t));
    }
    return written;
}

}  // namespace levyid
