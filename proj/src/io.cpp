#include "zeno/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace zeno {

std::string library_version() { return ZENO_VERSION; }

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // no negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size()) throw InvalidArgument("to_csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& p, const std::string& s) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ComputationError("cannot open " + p.string() + " for writing");
    f << s;
    if (!f) throw ComputationError("write failed for " + p.string());
}

void write_csv(const std::filesystem::path& p, const Table& t) { write_text(p, to_csv(t)); }

void write_json(const std::filesystem::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

Table trajectory_table(const Trajectory& tr) {
    Table t;
    t.header = {"t", "f", "P_ground", "P_excited", "trace", "min_eig", "entropy"};
    if (tr.has_bloch) t.header.insert(t.header.end(), {"bloch_x", "bloch_y", "bloch_z"});
    for (const auto& r : tr.records) {
        std::vector<double> row{r.t, r.f, r.p_ground, r.p_excited, r.trace, r.min_eig, r.entropy};
        if (tr.has_bloch) row.insert(row.end(), {r.bloch[0], r.bloch[1], r.bloch[2]});
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

json flatten(const Matrix& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back({m(i, j).real(), m(i, j).imag()});
    return a;
}

}  // namespace

json trajectory_json(const Trajectory& tr, const json& metadata) {
    json j;
    j["metadata"] = metadata;
    j["version"] = library_version();
    const Table t = trajectory_table(tr);
    j["columns"] = t.header;
    j["records"] = t.rows;
    j["warnings"] = tr.warnings;
    j["integrator"] = {{"accepted", tr.stats.accepted}, {"rejected", tr.stats.rejected},
                       {"rhs_evals", tr.stats.rhs_evals}};
    if (!tr.snapshots.empty()) {
        json snaps = json::array();
        for (const auto& s : tr.snapshots) snaps.push_back({{"dim", s.rows()}, {"re_im", flatten(s)}});
        j["snapshots"] = snaps;
    }
    if (tr.final_state.size() > 0) j["final_state"] = {{"dim", tr.final_state.rows()}, {"re_im", flatten(tr.final_state)}};
    return j;
}

json manifest_json(const Manifest& m) {
    return {{"tool", "zeno"},
            {"version", library_version()},
            {"command", m.command},
            {"inputs", m.config},
            {"outputs", m.outputs},
            {"wall_seconds", m.wall_seconds}};
}

void write_manifest(const std::filesystem::path& dir, const Manifest& m) {
    write_json(dir / "manifest.json", manifest_json(m));
}

}  // namespace zeno
