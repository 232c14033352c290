#pragma once

#include "levyid/coefficient_estimator.hpp"
#include "levyid/dataset_io.hpp"
#include "levyid/jump_estimator.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace levyid {

/// alpha_hat, sigma_hat, per-band values and counts as key-value pairs.
Metadata jump_summary(const JumpEstimate& est);

/// Single-row CSV: alpha_hat,sigma_hat,alpha_k1..alpha_kN,sigma_k0..sigma_kN,n0..nN
std::string jump_csv(const JumpEstimate& est);

/// Per-component coefficient table "basis,true,learned,dense". `truth` may be
/// empty, in which case the true column is left blank.
std::string coefficient_csv(const Dictionary& dict, const Eigen::RowVectorXd& learned,
                            const Eigen::RowVectorXd& dense,
                            const std::optional<Eigen::RowVectorXd>& truth);

/// Machine-readable JSON document with the full identification result.
std::string identified_system_json(const IdentifiedSystem& sys, const Metadata& config);

struct TruthTables {
    std::optional<Matrix> drift;
    std::optional<Matrix> diffusion;
};

/// Writes <prefix>_report.txt, <prefix>_report.json, <prefix>_jump.csv (when a
/// jump estimate exists) and one <prefix>_<label>.csv per component. Every
/// file carries `config`. Returns the written paths.
std::vector<std::filesystem::path> write_identification_report(const std::filesystem::path& prefix,
                                                               const IdentifiedSystem& sys,
                                                               const Metadata& config,
                                                               const TruthTables& truth = {});

}  // namespace levyid
