#include "levyid/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace levyid {

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::optional<std::string> metadata_value(const Metadata& meta, const std::string& key) {
    for (const auto& [k, v] : meta) {
        if (k == key) return v;
    }
    return std::nullopt;
}

void write_metadata(const std::filesystem::path& path, const Metadata& meta) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& [k, v] : meta) out << k << '=' << v << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

Metadata read_metadata(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    Metadata meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw IoError("malformed metadata line in " + path.string() + ": " + line);
        meta.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return meta;
}

std::filesystem::path metadata_path(const std::filesystem::path& csv) {
    auto p = csv;
    p += ".meta";
    return p;
}

void write_dataset_csv(const std::filesystem::path& path, const PairDataset& data) {
    data.validate();
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw IoError("cannot write " + path.string());
    const int n = data.n();
    for (int i = 0; i < n; ++i) std::fprintf(f, "%sz%d", i ? "," : "", i + 1);
    for (int i = 0; i < n; ++i) std::fprintf(f, ",x%d", i + 1);
    std::fputc('\n', f);
    for (Eigen::Index j = 0; j < data.Z.rows(); ++j) {
        for (int i = 0; i < n; ++i) std::fprintf(f, "%s%.17g", i ? "," : "", data.Z(j, i));
        for (int i = 0; i < n; ++i) std::fprintf(f, ",%.17g", data.X(j, i));
        std::fputc('\n', f);
    }
    const bool failed = std::ferror(f) != 0;
    if (std::fclose(f) != 0 || failed) throw IoError("write failed for " + path.string());
}

PairDataset read_dataset_csv(const std::filesystem::path& path, std::optional<double> h) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    const auto header_end = text.find('\n');
    if (header_end == std::string::npos) throw IoError("dataset " + path.string() + " has no header");
    std::string header = text.substr(0, header_end);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const auto columns = static_cast<int>(std::count(header.begin(), header.end(), ',')) + 1;
    if (columns % 2 != 0) throw IoError("dataset header must have 2n columns: " + header);
    const int n = columns / 2;
    std::string expected;
    for (int i = 0; i < n; ++i) expected += (i ? ",z" : "z") + std::to_string(i + 1);
    for (int i = 0; i < n; ++i) expected += ",x" + std::to_string(i + 1);
    if (header != expected) throw IoError("unexpected dataset header '" + header + "', want '" + expected + "'");

    std::vector<double> values;
    values.reserve(text.size() / 12);
    const char* p = text.data() + header_end + 1;
    const char* end = text.data() + text.size();
    std::size_t line = 2;
    while (p < end) {
        if (*p == '\n' || *p == '\r') {
            ++p;
            continue;
        }
        for (int c = 0; c < columns; ++c) {
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{}) {
                throw IoError("bad number on line " + std::to_string(line) + " of " + path.string());
            }
            values.push_back(v);
            p = next;
            const char want = c + 1 < columns ? ',' : '\n';
            if (p < end && (*p == want || (want == '\n' && *p == '\r'))) {
                ++p;
            } else if (!(p == end && c + 1 == columns)) {
                throw IoError("wrong field count on line " + std::to_string(line) + " of " + path.string());
            }
        }
        ++line;
    }

    PairDataset data;
    const auto rows = static_cast<Eigen::Index>(values.size() / static_cast<std::size_t>(columns));
    if (rows == 0) throw IoError("dataset " + path.string() + " has no rows");
    data.Z.resize(rows, n);
    data.X.resize(rows, n);
    for (Eigen::Index j = 0; j < rows; ++j) {
        const double* row = values.data() + j * columns;
        for (int i = 0; i < n; ++i) {
            data.Z(j, i) = row[i];
            data.X(j, i) = row[n + i];
        }
    }
    if (h) {
        data.h = *h;
    } else {
        const auto meta_file = metadata_path(path);
        if (!std::filesystem::exists(meta_file)) {
            throw IoError("no time step given and no metadata file " + meta_file.string());
        }
        const auto meta = read_metadata(meta_file);
        const auto hv = metadata_value(meta, "h");
        if (!hv) throw IoError("metadata " + meta_file.string() + " lacks h");
        try {
            data.h = std::stod(*hv);
        } catch (const std::exception&) {
            throw IoError("metadata " + meta_file.string() + " has a malformed h");
        }
    }
    data.validate();
    return data;
}

void save_dataset(const std::filesystem::path& csv, const PairDataset& data, const Metadata& extra) {
    write_dataset_csv(csv, data);
    Metadata meta{{"h", format_double(data.h)}, {"n", std::to_string(data.n())}, {"M", std::to_string(data.M())}};
    meta.insert(meta.end(), extra.begin(), extra.end());
    write_metadata(metadata_path(csv), meta);
}

}  // namespace levyid
