#include "zeno/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace zeno {

Backend parse_backend(const std::string& s) {
    if (s == "lindblad") return Backend::lindblad;
    if (s == "coarse") return Backend::coarse;
    if (s == "redfield") return Backend::redfield;
    if (s == "singular") return Backend::singular;
    throw InvalidArgument("unknown backend '" + s + "'");
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::lindblad: return "lindblad";
        case Backend::coarse: return "coarse";
        case Backend::redfield: return "redfield";
        case Backend::singular: return "singular";
    }
    return "?";
}

json default_config() {
    return json{
        {"experiment", "spectrum"},
        {"n", 4},
        {"omega", 1.0},
        {"marked", 0},
        {"seed", 0},
        {"backend", "lindblad"},
        {"gamma", 0.0},
        {"schedule", {{"kind", "adaptive"}, {"eps", 0.1}, {"T", 100.0}}},
        {"bath",
         {{"kind", "exponential"}, {"range", "long"}, {"g", 0.0}, {"tau_env", 0.1}, {"gamma0", 1.0}, {"omega_env", 0.0}}},
        {"spectrum", {{"N", 0.0}, {"f_points", 201}, {"t_points", 201}, {"shade_factor", 1.0}}},
        {"evolve",
         {{"outputs", 201},
          {"rtol", 1e-7},
          {"atol", 1e-9},
          {"measure_s", false},
          {"subspace", true},
          {"coarse_dt", 1.0},
          {"redfield_dt", 0.01},
          {"snapshots", false}}},
        {"bloch", {{"variant", "dephasing_z"}, {"omega", 1.0}, {"ratio_min", 1e-2}, {"ratio_max", 1e3}, {"points", 40}}},
        {"oscillator",
         {{"alpha", 1.0},
          {"beta", 1.0},
          {"horizon", 50.0},
          {"x0", 1.0},
          {"p0", 0.0},
          {"ramp", 0.0},
          {"solver", "both"},
          {"outputs", 501}}},
        {"sweep",
         {{"n", json::array()},
          {"gamma", json::array()},
          {"eps", json::array()},
          {"T", json::array()},
          {"max_trajectories", 1000}}},
        {"scaling",
         {{"n_min", 4},
          {"n_max", 10},
          {"eps", 0.1},
          {"success", 0.99},
          {"constant", true},
          {"mixing_n_min", 4},
          {"mixing_n_max", 9},
          {"mixing_gamma", 10.0},
          {"mixing_threshold", 0.05}}},
    };
}

namespace {

const char* kind_of(const json& j) {
    if (j.is_object()) return "object";
    if (j.is_array()) return "array";
    if (j.is_boolean()) return "boolean";
    if (j.is_number()) return "number";
    if (j.is_string()) return "string";
    return "null";
}

void check_type(const json& def, const json& val, const std::string& key) {
    if (std::string(kind_of(def)) != kind_of(val))
        throw ConfigError(key + ": expected " + kind_of(def) + ", got " + kind_of(val));
}

void merge(json& base, const json& user, const std::string& prefix) {
    if (!user.is_object()) throw ConfigError((prefix.empty() ? "config" : prefix) + ": expected object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!base.contains(it.key())) throw ConfigError("unknown key '" + key + "'");
        json& slot = base[it.key()];
        check_type(slot, it.value(), key);
        if (slot.is_object())
            merge(slot, it.value(), key);
        else
            slot = it.value();
    }
}

void apply_override(json& cfg, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + spec + "': expected KEY=VALUE");
    const std::string key = spec.substr(0, eq), raw = spec.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }
    json* node = &cfg;
    std::stringstream ss(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!node->is_object() || !node->contains(parts[i])) throw ConfigError("unknown key '" + key + "'");
        node = &(*node)[parts[i]];
    }
    if (node->is_object()) throw ConfigError(key + ": cannot override a whole section");
    check_type(*node, value, key);
    *node = value;
}

double num(const json& j, const char* key) { return j.at(key).get<double>(); }

int integer(const json& j, const std::string& key, const std::string& label = "") {
    const double d = j.at(key).get<double>();
    if (d != static_cast<double>(static_cast<long long>(d)))
        throw ConfigError((label.empty() ? key : label) + ": expected an integer");
    return static_cast<int>(d);
}

void require(bool ok, const std::string& key, const std::string& constraint) {
    if (!ok) throw ConfigError(key + ": " + constraint);
}

template <class T, class Parse>
T parse_enum(const std::string& key, const std::string& value, Parse p) {
    try {
        return p(value);
    } catch (const InvalidArgument&) {
        throw ConfigError(key + ": invalid value '" + value + "'");
    }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.resolved = j;
    c.experiment = j.at("experiment").get<std::string>();
    static const std::vector<std::string> experiments = {"spectrum",  "schedule",   "evolve", "bloch",
                                                         "oscillator", "zeno-sweep", "scaling"};
    require(std::find(experiments.begin(), experiments.end(), c.experiment) != experiments.end(), "experiment",
            "must be one of spectrum, schedule, evolve, bloch, oscillator, zeno-sweep, scaling");

    c.problem.n = integer(j, "n");
    require(c.problem.n >= 1, "n", "must be >= 1");
    require(c.problem.n <= kTol.n_max, "n", "exceeds n_max=" + std::to_string(kTol.n_max));
    c.problem.omega = num(j, "omega");
    require(c.problem.omega > 0.0, "omega", "must be positive");
    const int marked = integer(j, "marked");
    require(marked >= 0 && static_cast<std::uint64_t>(marked) < (std::uint64_t(1) << c.problem.n), "marked",
            "must lie in [0, 2^n)");
    c.problem.marked = static_cast<std::uint64_t>(marked);
    const double seed = num(j, "seed");
    require(seed >= 0.0 && seed == static_cast<double>(static_cast<std::uint64_t>(seed)), "seed",
            "must be a non-negative integer");
    c.seed = static_cast<std::uint64_t>(seed);
    c.backend = parse_enum<Backend>("backend", j.at("backend").get<std::string>(), parse_backend);
    c.gamma = num(j, "gamma");
    require(c.gamma >= 0.0, "gamma", "must be >= 0");

    const json& s = j.at("schedule");
    const std::string kind = s.at("kind").get<std::string>();
    require(kind == "adaptive" || kind == "constant", "schedule.kind", "must be adaptive or constant");
    c.schedule.kind = kind == "adaptive" ? Schedule::Kind::adaptive : Schedule::Kind::constant;
    c.schedule.eps = num(s, "eps");
    require(c.schedule.eps > 0.0 && c.schedule.eps <= 1.0, "schedule.eps", "must lie in (0, 1]");
    c.schedule.T = num(s, "T");
    require(c.schedule.T > 0.0, "schedule.T", "must be positive");

    const json& b = j.at("bath");
    const std::string bk = b.at("kind").get<std::string>();
    require(bk == "exponential" || bk == "delta", "bath.kind", "must be exponential or delta");
    c.bath.kind = bk == "exponential" ? BathModel::Kind::exponential : BathModel::Kind::delta;
    const std::string br = b.at("range").get<std::string>();
    require(br == "long" || br == "short", "bath.range", "must be long or short");
    c.bath.range = br == "long" ? BathModel::Range::long_range : BathModel::Range::short_range;
    c.bath.g = num(b, "g");
    require(c.bath.g >= 0.0, "bath.g", "must be >= 0");
    c.bath.tau_env = num(b, "tau_env");
    require(c.bath.tau_env > 0.0, "bath.tau_env", "must be positive");
    c.bath.gamma0 = num(b, "gamma0");
    require(c.bath.gamma0 >= 0.0, "bath.gamma0", "must be >= 0");
    c.bath.omega_env = num(b, "omega_env");
    require(std::isfinite(c.bath.omega_env), "bath.omega_env", "must be finite");

    const json& sp = j.at("spectrum");
    c.spectrum.N = num(sp, "N");
    require(c.spectrum.N == 0.0 || c.spectrum.N >= 2.0, "spectrum.N", "must be 0 (use 2^n) or >= 2");
    c.spectrum.f_points = integer(sp, "f_points", "spectrum.f_points");
    require(c.spectrum.f_points >= 2, "spectrum.f_points", "must be >= 2");
    c.spectrum.t_points = integer(sp, "t_points", "spectrum.t_points");
    require(c.spectrum.t_points >= 2, "spectrum.t_points", "must be >= 2");
    c.spectrum.shade_factor = num(sp, "shade_factor");
    require(c.spectrum.shade_factor >= 0.0, "spectrum.shade_factor", "must be >= 0");

    const json& e = j.at("evolve");
    c.evolve.outputs = integer(e, "outputs", "evolve.outputs");
    require(c.evolve.outputs >= 2, "evolve.outputs", "must be >= 2");
    c.evolve.rtol = num(e, "rtol");
    require(c.evolve.rtol > 0.0, "evolve.rtol", "must be positive");
    c.evolve.atol = num(e, "atol");
    require(c.evolve.atol > 0.0, "evolve.atol", "must be positive");
    c.evolve.measure_s = e.at("measure_s").get<bool>();
    c.evolve.subspace = e.at("subspace").get<bool>();
    c.evolve.coarse_dt = num(e, "coarse_dt");
    require(c.evolve.coarse_dt > 0.0, "evolve.coarse_dt", "must be positive");
    c.evolve.redfield_dt = num(e, "redfield_dt");
    require(c.evolve.redfield_dt > 0.0, "evolve.redfield_dt", "must be positive");
    c.evolve.snapshots = e.at("snapshots").get<bool>();
    require(c.evolve.subspace || c.problem.n <= 10, "evolve.subspace", "full-space runs are limited to n <= 10");
    require(!c.evolve.measure_s || c.backend == Backend::lindblad, "evolve.measure_s",
            "the |s><s| channel needs the lindblad backend");
    require(c.backend == Backend::lindblad || c.backend == Backend::coarse || c.problem.n <= 10, "backend",
            "redfield and singular backends run in the full space, n <= 10");

    const json& bl = j.at("bloch");
    c.bloch.variant =
        parse_enum<BlochVariant>("bloch.variant", bl.at("variant").get<std::string>(), parse_bloch_variant);
    c.bloch.omega = num(bl, "omega");
    require(c.bloch.omega > 0.0, "bloch.omega", "must be positive");
    c.bloch.ratio_min = num(bl, "ratio_min");
    c.bloch.ratio_max = num(bl, "ratio_max");
    require(c.bloch.ratio_min > 0.0, "bloch.ratio_min", "must be positive");
    require(c.bloch.ratio_max > c.bloch.ratio_min, "bloch.ratio_max", "must exceed bloch.ratio_min");
    c.bloch.points = integer(bl, "points", "bloch.points");
    require(c.bloch.points >= 2, "bloch.points", "must be >= 2");

    const json& o = j.at("oscillator");
    c.oscillator.alpha = num(o, "alpha");
    require(c.oscillator.alpha >= 0.0, "oscillator.alpha", "must be >= 0");
    c.oscillator.beta = num(o, "beta");
    require(c.oscillator.beta > 0.0, "oscillator.beta", "must be positive");
    c.oscillator.horizon = num(o, "horizon");
    require(c.oscillator.horizon > 0.0, "oscillator.horizon", "must be positive");
    c.oscillator.x0 = num(o, "x0");
    c.oscillator.p0 = num(o, "p0");
    c.oscillator.ramp = num(o, "ramp");
    require(c.oscillator.ramp >= 0.0 && c.oscillator.ramp * c.oscillator.horizon < 0.5, "oscillator.ramp",
            "must satisfy 0 <= ramp * horizon < 1/2");
    c.oscillator.solver = o.at("solver").get<std::string>();
    require(c.oscillator.solver == "local" || c.oscillator.solver == "kernel" || c.oscillator.solver == "both",
            "oscillator.solver", "must be local, kernel or both");
    require(c.oscillator.ramp == 0.0 || c.oscillator.solver == "local", "oscillator.solver",
            "the kernel solver needs a constant trap frequency (ramp = 0)");
    c.oscillator.outputs = integer(o, "outputs", "oscillator.outputs");
    require(c.oscillator.outputs >= 2, "oscillator.outputs", "must be >= 2");

    const json& sw = j.at("sweep");
    for (const auto& v : sw.at("n")) {
        require(v.is_number_integer() && v.get<int>() >= 1 && v.get<int>() <= kTol.n_max, "sweep.n",
                "entries must be integers in [1, " + std::to_string(kTol.n_max) + "]");
        c.sweep.n.push_back(v.get<int>());
    }
    for (const auto& v : sw.at("gamma")) {
        require(v.is_number() && v.get<double>() >= 0.0, "sweep.gamma", "entries must be >= 0");
        c.sweep.gamma.push_back(v.get<double>());
    }
    for (const auto& v : sw.at("eps")) {
        require(v.is_number() && v.get<double>() > 0.0 && v.get<double>() <= 1.0, "sweep.eps",
                "entries must lie in (0, 1]");
        c.sweep.eps.push_back(v.get<double>());
    }
    for (const auto& v : sw.at("T")) {
        require(v.is_number() && v.get<double>() > 0.0, "sweep.T", "entries must be positive");
        c.sweep.T.push_back(v.get<double>());
    }
    c.sweep.max_trajectories = integer(sw, "max_trajectories", "sweep.max_trajectories");
    require(c.sweep.max_trajectories >= 1, "sweep.max_trajectories", "must be >= 1");
    auto count = [](std::size_t k) { return static_cast<long>(std::max<std::size_t>(1, k)); };
    const long total = count(c.sweep.n.size()) * count(c.sweep.gamma.size()) * count(c.sweep.eps.size()) *
                       count(c.sweep.T.size());
    require(total <= c.sweep.max_trajectories, "sweep", "size " + std::to_string(total) +
                                                            " exceeds sweep.max_trajectories");

    const json& sc = j.at("scaling");
    c.scaling.n_min = integer(sc, "n_min", "scaling.n_min");
    c.scaling.n_max = integer(sc, "n_max", "scaling.n_max");
    require(c.scaling.n_min >= 2, "scaling.n_min", "must be >= 2");
    require(c.scaling.n_max <= kTol.n_max, "scaling.n_max", "exceeds n_max=" + std::to_string(kTol.n_max));
    require(c.scaling.n_max - c.scaling.n_min + 1 >= 4, "scaling.n_max", "fit needs at least 4 sizes");
    c.scaling.eps = num(sc, "eps");
    require(c.scaling.eps > 0.0 && c.scaling.eps <= 1.0, "scaling.eps", "must lie in (0, 1]");
    c.scaling.success = num(sc, "success");
    require(c.scaling.success > 0.0 && c.scaling.success < 1.0, "scaling.success", "must lie in (0, 1)");
    c.scaling.constant = sc.at("constant").get<bool>();
    c.scaling.mixing_n_min = integer(sc, "mixing_n_min", "scaling.mixing_n_min");
    c.scaling.mixing_n_max = integer(sc, "mixing_n_max", "scaling.mixing_n_max");
    require(c.scaling.mixing_n_min >= 2, "scaling.mixing_n_min", "must be >= 2");
    require(c.scaling.mixing_n_max <= kTol.n_max, "scaling.mixing_n_max",
            "exceeds n_max=" + std::to_string(kTol.n_max));
    require(c.scaling.mixing_n_max - c.scaling.mixing_n_min + 1 >= 4, "scaling.mixing_n_max",
            "fit needs at least 4 sizes");
    c.scaling.mixing_gamma = num(sc, "mixing_gamma");
    require(c.scaling.mixing_gamma > 0.0, "scaling.mixing_gamma", "must be positive");
    c.scaling.mixing_threshold = num(sc, "mixing_threshold");
    require(c.scaling.mixing_threshold > 0.0 && c.scaling.mixing_threshold < 1.0, "scaling.mixing_threshold",
            "must lie in (0, 1)");
    return c;
}

ExperimentConfig load_config_text(const std::string& text, const std::vector<std::string>& overrides,
                                  const std::string& source) {
    json user;
    try {
        user = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        std::string what = e.what();
        const auto pos = what.find("syntax error");
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error" +
                          (pos != std::string::npos ? " (" + what.substr(pos) + ")" : ""));
    }
    json cfg = default_config();
    merge(cfg, user, "");
    for (const auto& o : overrides) apply_override(cfg, o);
    try {
        return config_from_json(cfg);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid value: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError(path + ": cannot open config file");
    std::stringstream ss;
    ss << f.rdbuf();
    return load_config_text(ss.str(), overrides, path);
}

}  // namespace zeno
