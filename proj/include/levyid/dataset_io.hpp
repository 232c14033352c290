#pragma once

#include "levyid/sde.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace levyid {

/// Ordered key-value record, written one "key=value" per line.
using Metadata = std::vector<std::pair<std::string, std::string>>;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits.
std::string format_double(double value);

std::optional<std::string> metadata_value(const Metadata& meta, const std::string& key);

void write_metadata(const std::filesystem::path& path, const Metadata& meta);
Metadata read_metadata(const std::filesystem::path& path);

/// Sidecar path for a dataset: "<csv>.meta".
std::filesystem::path metadata_path(const std::filesystem::path& csv);

/// CSV with header "z1,...,zn,x1,...,xn" and one pair per line.
void write_dataset_csv(const std::filesystem::path& path, const PairDataset& data);

/// Reads the CSV; h is taken from `h` when given, else from the sidecar.
PairDataset read_dataset_csv(const std::filesystem::path& path, std::optional<double> h = std::nullopt);

/// Writes the CSV and a sidecar holding h, n, M followed by `extra`.
void save_dataset(const std::filesystem::path& csv, const PairDataset& data, const Metadata& extra);

}  // namespace levyid
