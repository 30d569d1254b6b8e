#pragma once

#include "zeno/dynamics.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace zeno {

using json = nlohmann::json;

// Comma-separated, header row, LF endings, 17 significant digits.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double x);
std::string to_csv(const Table& t);
void write_text(const std::filesystem::path& p, const std::string& s);
void write_csv(const std::filesystem::path& p, const Table& t);
void write_json(const std::filesystem::path& p, const json& j);

// Columns t, f, P_ground, P_excited, trace, min_eig, entropy (+ bloch_x/y/z for two levels).
Table trajectory_table(const Trajectory& tr);
json trajectory_json(const Trajectory& tr, const json& metadata);

struct Manifest {
    json config;
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
    std::string command;
};

json manifest_json(const Manifest& m);
void write_manifest(const std::filesystem::path& dir, const Manifest& m);

std::string library_version();

}  // namespace zeno
