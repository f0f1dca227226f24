#include "phonoline/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace phonoline {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw ConfigError("config: " + path + ": " + what);
}

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                const std::string& path) {
    if (!node.IsMap()) bad(path, "expected a mapping");
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key)) bad(path + "." + key, "unknown key");
    }
}

double as_double(const YAML::Node& node, const std::string& path) {
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        bad(path, "expected a number");
    }
}

Index as_index(const YAML::Node& node, const std::string& path) {
    try {
        return node.as<Index>();
    } catch (const YAML::Exception&) {
        bad(path, "expected an integer");
    }
}

std::string as_string(const YAML::Node& node, const std::string& path) {
    try {
        return node.as<std::string>();
    } catch (const YAML::Exception&) {
        bad(path, "expected a string");
    }
}

// Scalar broadcasts to every emitter; a list must match n_spins.
std::vector<double> per_spin(const YAML::Node& node, Index n, const std::string& path) {
    std::vector<double> out;
    if (node.IsSequence()) {
        for (std::size_t i = 0; i < node.size(); ++i)
            out.push_back(as_double(node[i], path + "[" + std::to_string(i) + "]"));
        if (Index(out.size()) != n)
            bad(path, "expected " + std::to_string(n) + " entries, got " +
                          std::to_string(out.size()));
    } else {
        out.assign(std::size_t(n), as_double(node, path));
    }
    return out;
}

SystemParams parse_params(const YAML::Node& node, const std::string& path) {
    check_keys(node,
               {"n_spins", "truncation", "delta", "g", "omega_drive", "gamma_b", "gamma_s",
                "gamma_phi", "nbar_b", "nbar_s"},
               path);
    SystemParams p;
    if (node["n_spins"]) p.n_spins = int(as_index(node["n_spins"], path + ".n_spins"));
    if (node["truncation"]) p.d = as_index(node["truncation"], path + ".truncation");
    if (p.n_spins < 1) bad(path + ".n_spins", "must be >= 1");
    p.delta = node["delta"] ? per_spin(node["delta"], p.n_spins, path + ".delta")
                            : std::vector<double>(std::size_t(p.n_spins), 0.0);
    p.g = node["g"] ? per_spin(node["g"], p.n_spins, path + ".g")
                    : std::vector<double>(std::size_t(p.n_spins), 0.0);
    p.omega_drive = node["omega_drive"]
                        ? per_spin(node["omega_drive"], p.n_spins, path + ".omega_drive")
                        : std::vector<double>(std::size_t(p.n_spins), 0.0);
    if (node["gamma_b"]) p.gamma_b = as_double(node["gamma_b"], path + ".gamma_b");
    if (node["gamma_s"]) p.gamma_s = as_double(node["gamma_s"], path + ".gamma_s");
    if (node["gamma_phi"]) p.gamma_phi = as_double(node["gamma_phi"], path + ".gamma_phi");
    if (node["nbar_b"]) p.nbar_b = as_double(node["nbar_b"], path + ".nbar_b");
    if (node["nbar_s"]) p.nbar_s = as_double(node["nbar_s"], path + ".nbar_s");
    return p;
}

InitialState parse_initial(const YAML::Node& node, const std::string& path) {
    check_keys(node, {"ground", "spins", "bell_diagonal", "phonon"}, path);
    InitialState init;
    int ways = 0;
    if (node["ground"]) {
        if (!node["ground"].as<bool>(false)) bad(path + ".ground", "must be true when present");
        init.ground = true;
        ++ways;
    }
    if (node["spins"]) {
        const YAML::Node spins = node["spins"];
        if (!spins.IsSequence()) bad(path + ".spins", "expected a list");
        for (std::size_t i = 0; i < spins.size(); ++i) {
            const std::string sp = path + ".spins[" + std::to_string(i) + "]";
            check_keys(spins[i], {"alpha", "beta"}, sp);
            SpinInit s;
            if (!spins[i]["alpha"]) bad(sp, "missing alpha");
            s.alpha = as_double(spins[i]["alpha"], sp + ".alpha");
            if (spins[i]["beta"]) {
                s.beta = as_double(spins[i]["beta"], sp + ".beta");
            } else {
                const double rem = 1.0 - s.alpha * s.alpha;
                if (rem < -1e-12) bad(sp + ".alpha", "|alpha| exceeds 1");
                s.beta = std::sqrt(std::max(0.0, rem));
            }
            init.spins.push_back(s);
        }
        ++ways;
    }
    if (node["bell_diagonal"]) {
        const YAML::Node bd = node["bell_diagonal"];
        check_keys(bd, {"c1", "c2", "c3"}, path + ".bell_diagonal");
        BellDiagonalSpec spec;
        if (!bd["c1"] || !bd["c2"] || !bd["c3"])
            bad(path + ".bell_diagonal", "needs c1, c2, c3");
        spec.c1 = as_double(bd["c1"], path + ".bell_diagonal.c1");
        spec.c2 = as_double(bd["c2"], path + ".bell_diagonal.c2");
        spec.c3 = as_double(bd["c3"], path + ".bell_diagonal.c3");
        init.bell_diagonal = spec;
        ++ways;
    }
    if (ways != 1) bad(path, "exactly one of ground, spins, bell_diagonal is required");
    if (node["phonon"]) {
        const YAML::Node ph = node["phonon"];
        check_keys(ph, {"kind", "nbar", "n"}, path + ".phonon");
        const std::string kind =
            ph["kind"] ? as_string(ph["kind"], path + ".phonon.kind") : "thermal";
        if (kind == "thermal") {
            if (ph["n"]) bad(path + ".phonon.n", "only valid for kind: fock");
            if (ph["nbar"]) init.thermal_nbar = as_double(ph["nbar"], path + ".phonon.nbar");
        } else if (kind == "fock") {
            if (ph["nbar"]) bad(path + ".phonon.nbar", "only valid for kind: thermal");
            init.phonon_fock = true;
            if (ph["n"]) init.fock_n = as_index(ph["n"], path + ".phonon.n");
        } else {
            bad(path + ".phonon.kind", "expected thermal or fock");
        }
    }
    return init;
}

TimeGrid parse_time(const YAML::Node& node, const std::string& path) {
    check_keys(node, {"t_max", "samples_per_unit", "samples", "log"}, path);
    TimeGrid t;
    if (!node["t_max"]) bad(path, "missing t_max");
    t.t_max = as_double(node["t_max"], path + ".t_max");
    if (t.t_max < 0.0) bad(path + ".t_max", "must be >= 0");
    int ways = 0;
    if (node["samples_per_unit"]) {
        t.samples_per_unit = as_double(node["samples_per_unit"], path + ".samples_per_unit");
        if (*t.samples_per_unit <= 0.0) bad(path + ".samples_per_unit", "must be > 0");
        ++ways;
    }
    if (node["samples"]) {
        t.samples = as_index(node["samples"], path + ".samples");
        if (*t.samples < 0) bad(path + ".samples", "must be >= 0");
        ++ways;
    }
    if (node["log"]) {
        const YAML::Node log = node["log"];
        check_keys(log, {"t_min", "points"}, path + ".log");
        t.log_scale = true;
        if (!log["t_min"]) bad(path + ".log", "missing t_min");
        t.log_t_min = as_double(log["t_min"], path + ".log.t_min");
        if (log["points"]) t.log_points = as_index(log["points"], path + ".log.points");
        if (t.log_t_min <= 0.0) bad(path + ".log.t_min", "must be > 0");
        if (t.log_t_min > t.t_max) bad(path + ".log.t_min", "exceeds t_max");
        if (t.log_points < 1) bad(path + ".log.points", "must be >= 1");
        ++ways;
    }
    if (ways > 1) bad(path, "samples_per_unit, samples, log are mutually exclusive");
    return t;
}

SweepAxis parse_axis(const YAML::Node& node, const std::string& path) {
    check_keys(node, {"param", "min", "max", "points", "scale"}, path);
    SweepAxis ax;
    if (!node["param"] || !node["min"] || !node["max"])
        bad(path, "needs param, min, max");
    ax.param = as_string(node["param"], path + ".param");
    ax.min = as_double(node["min"], path + ".min");
    ax.max = as_double(node["max"], path + ".max");
    if (node["points"]) ax.points = as_index(node["points"], path + ".points");
    if (ax.points < 1) bad(path + ".points", "must be >= 1");
    if (node["scale"]) {
        const std::string s = as_string(node["scale"], path + ".scale");
        if (s == "log")
            ax.log_scale = true;
        else if (s != "linear")
            bad(path + ".scale", "expected linear or log");
    }
    if (ax.log_scale && (ax.min <= 0.0 || ax.max <= 0.0))
        bad(path, "log axis bounds must be positive");
    if (ax.points > 1 && !(ax.max > ax.min)) bad(path, "max must exceed min");
    return ax;
}

SweepSpec parse_sweep(const YAML::Node& node, const std::string& path) {
    check_keys(node, {"mode", "observable", "t_final", "x", "y"}, path);
    SweepSpec sw;
    const std::string mode = node["mode"] ? as_string(node["mode"], path + ".mode") : "steady";
    if (mode == "steady") {
        sw.steady = true;
        if (node["t_final"]) bad(path + ".t_final", "only valid for mode: final-time");
    } else if (mode == "final-time") {
        sw.steady = false;
        if (!node["t_final"]) bad(path, "mode final-time needs t_final");
        sw.t_final = as_double(node["t_final"], path + ".t_final");
        if (sw.t_final <= 0.0) bad(path + ".t_final", "must be > 0");
    } else {
        bad(path + ".mode", "expected steady or final-time");
    }
    if (!node["observable"]) bad(path, "missing observable");
    sw.observable = parse_observable(as_string(node["observable"], path + ".observable"));
    if (!node["x"] || !node["y"]) bad(path, "needs x and y axes");
    sw.x = parse_axis(node["x"], path + ".x");
    sw.y = parse_axis(node["y"], path + ".y");
    return sw;
}

WignerOutputSpec parse_wigner(const YAML::Node& node, const std::string& path) {
    check_keys(node, {"at", "re_min", "re_max", "im_min", "im_max", "points"}, path);
    WignerOutputSpec w;
    if (!node["at"]) bad(path, "missing at");
    w.at = as_double(node["at"], path + ".at");
    if (node["re_min"]) w.grid.re_min = as_double(node["re_min"], path + ".re_min");
    if (node["re_max"]) w.grid.re_max = as_double(node["re_max"], path + ".re_max");
    if (node["im_min"]) w.grid.im_min = as_double(node["im_min"], path + ".im_min");
    if (node["im_max"]) w.grid.im_max = as_double(node["im_max"], path + ".im_max");
    if (node["points"]) {
        const Index p = as_index(node["points"], path + ".points");
        if (p < 2) bad(path + ".points", "must be >= 2");
        w.grid.re_points = int(p);
        w.grid.im_points = int(p);
    }
    return w;
}

}  // namespace

ObservableSpec parse_observable(const std::string& token) {
    ObservableSpec spec;
    spec.token = token;
    const auto colon = token.find(':');
    const std::string head = token.substr(0, colon);
    if (head == "fock_fidelity") {
        if (colon == std::string::npos)
            throw ConfigError("observable fock_fidelity needs an index, e.g. fock_fidelity:1");
        spec.kind = ObservableKind::fock_fidelity;
        try {
            std::size_t used = 0;
            spec.fock_n = std::stol(token.substr(colon + 1), &used);
            if (used != token.size() - colon - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("observable '" + token + "': bad Fock index");
        }
        if (spec.fock_n < 0) throw ConfigError("observable '" + token + "': negative Fock index");
        return spec;
    }
    if (colon != std::string::npos) throw ConfigError("observable '" + token + "' takes no index");
    if (head == "qubit_fidelity")
        spec.kind = ObservableKind::qubit_fidelity;
    else if (head == "g2")
        spec.kind = ObservableKind::g2;
    else if (head == "fock_distribution")
        spec.kind = ObservableKind::fock_distribution;
    else if (head == "wigner")
        spec.kind = ObservableKind::wigner;
    else if (head == "concurrence")
        spec.kind = ObservableKind::concurrence;
    else if (head == "discord")
        spec.kind = ObservableKind::discord;
    else if (head == "purity")
        spec.kind = ObservableKind::purity;
    else if (head == "populations")
        spec.kind = ObservableKind::populations;
    else
        throw ConfigError("unknown observable '" + token + "'");
    return spec;
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out;
    if (log_scale) {
        out.push_back(0.0);
        if (log_points == 1) {
            out.push_back(t_max);
        } else {
            const double ratio = std::log(t_max / log_t_min) / double(log_points - 1);
            for (Index i = 0; i < log_points; ++i)
                out.push_back(log_t_min * std::exp(ratio * double(i)));
            out.back() = t_max;  // exact endpoint regardless of rounding
        }
        return out;
    }
    if (samples) {
        const Index n = *samples;
        if (n == 0) return out;
        if (n == 1) return {0.0};
        for (Index i = 0; i < n; ++i) out.push_back(t_max * double(i) / double(n - 1));
        return out;
    }
    const double spu = samples_per_unit.value_or(20.0);
    const Index n = Index(std::lround(spu * t_max));
    if (n == 0) return {0.0};
    for (Index i = 0; i <= n; ++i) out.push_back(t_max * double(i) / double(n));
    return out;
}

std::vector<double> SweepAxis::values() const {
    std::vector<double> out;
    if (points == 1) return {min};
    for (Index i = 0; i < points; ++i) {
        const double f = double(i) / double(points - 1);
        out.push_back(log_scale ? min * std::exp(f * std::log(max / min))
                                : min + f * (max - min));
    }
    return out;
}

void apply_sweep_param(SystemParams& params, const std::string& name, double value) {
    const auto fill = [&](std::vector<double>& v) { v.assign(v.size(), value); };
    if (name == "delta")
        fill(params.delta);
    else if (name == "g")
        fill(params.g);
    else if (name == "omega_drive")
        fill(params.omega_drive);
    else if (name == "gamma_b")
        params.gamma_b = value;
    else if (name == "gamma_s")
        params.gamma_s = value;
    else if (name == "gamma_phi")
        params.gamma_phi = value;
    else if (name == "gamma_s_phi")
        params.gamma_s = params.gamma_phi = value;
    else if (name == "nbar_b")
        params.nbar_b = value;
    else if (name == "nbar_s")
        params.nbar_s = value;
    else
        throw ConfigError("sweep: unknown parameter '" + name + "'");
}

void ScenarioConfig::validate() const {
    if (name.empty()) throw ConfigError("config: missing name");
    params.validate();
    if (initial.bell_diagonal) {
        if (params.n_spins != 2)
            throw ConfigError("config: bell_diagonal initial state needs n_spins = 2");
        initial.bell_diagonal->validate();
    }
    if (!initial.spins.empty() && Index(initial.spins.size()) != params.n_spins)
        throw ConfigError("config: initial.spins must list one entry per emitter");
    if (initial.phonon_fock && initial.fock_n >= params.d)
        throw ConfigError("config: initial Fock index exceeds truncation");
    bool wants_wigner = false;
    for (const ObservableSpec& ob : observables) {
        if (ob.kind == ObservableKind::fock_fidelity && ob.fock_n >= params.d)
            throw ConfigError("config: observable " + ob.token + " exceeds truncation");
        if ((ob.kind == ObservableKind::concurrence || ob.kind == ObservableKind::discord) &&
            params.n_spins != 2)
            throw ConfigError("config: observable " + ob.token + " needs n_spins = 2");
        if (ob.kind == ObservableKind::discord)
            for (double om : params.omega_drive)
                if (om != 0.0)
                    throw ConfigError(
                        "config: discord requires omega_drive = 0 (X form is not preserved "
                        "under driving)");
        if (ob.kind == ObservableKind::wigner) wants_wigner = true;
    }
    if (wants_wigner != wigner.has_value())
        throw ConfigError(wants_wigner
                              ? "config: observable wigner needs a wigner block with 'at'"
                              : "config: wigner block requires 'wigner' among observables");
    if (wigner && (wigner->at < 0.0 || wigner->at > time.t_max))
        throw ConfigError("config: wigner.at lies outside the time grid");
    if (kind == RunKind::sweep) {
        if (!sweep) throw ConfigError("config: sweep run without sweep block");
        SystemParams probe = params;
        apply_sweep_param(probe, sweep->x.param, sweep->x.min);
        apply_sweep_param(probe, sweep->y.param, sweep->y.min);
        const ObservableKind k = sweep->observable.kind;
        if (k == ObservableKind::fock_distribution || k == ObservableKind::wigner ||
            k == ObservableKind::populations)
            throw ConfigError("config: sweep observable must be scalar-valued");
    } else if (sweep) {
        throw ConfigError("config: sweep block requires kind: sweep");
    }
    if (kind == RunKind::ibm_compare) {
        if (!initial.bell_diagonal)
            throw ConfigError("config: ibm-compare needs a bell_diagonal initial state");
        if (params.gamma_b != 0.0)
            throw ConfigError("config: ibm-compare models the protected line (gamma_b = 0)");
        if (!observables.empty())
            throw ConfigError("config: ibm-compare defines its own output columns");
        for (double om : params.omega_drive)
            if (om != 0.0) throw ConfigError("config: ibm-compare requires omega_drive = 0");
    } else if (kind == RunKind::timeseries && observables.empty()) {
        throw ConfigError("config: no observables requested");
    }
}

ScenarioConfig parse_config_text(const std::string& yaml_text, const std::string& origin) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError("config: " + origin + ": parse error: " + e.what());
    }
    check_keys(root, {"name", "kind", "params", "initial", "time", "observables", "wigner",
                      "output", "sweep"},
               origin);

    ScenarioConfig cfg;
    if (!root["name"]) bad(origin, "missing name");
    cfg.name = as_string(root["name"], origin + ".name");

    if (root["kind"]) {
        const std::string k = as_string(root["kind"], origin + ".kind");
        if (k == "timeseries")
            cfg.kind = RunKind::timeseries;
        else if (k == "sweep")
            cfg.kind = RunKind::sweep;
        else if (k == "ibm-compare")
            cfg.kind = RunKind::ibm_compare;
        else
            bad(origin + ".kind", "expected timeseries, sweep, or ibm-compare");
    } else {
        cfg.kind = root["sweep"] ? RunKind::sweep : RunKind::timeseries;
    }

    if (!root["params"]) bad(origin, "missing params");
    cfg.params = parse_params(root["params"], origin + ".params");
    if (!root["initial"]) bad(origin, "missing initial");
    cfg.initial = parse_initial(root["initial"], origin + ".initial");
    if (root["time"]) {
        cfg.time = parse_time(root["time"], origin + ".time");
    } else if (cfg.kind != RunKind::sweep) {
        bad(origin, "missing time");
    }
    if (root["observables"]) {
        const YAML::Node obs = root["observables"];
        if (!obs.IsSequence()) bad(origin + ".observables", "expected a list");
        for (std::size_t i = 0; i < obs.size(); ++i)
            cfg.observables.push_back(parse_observable(
                as_string(obs[i], origin + ".observables[" + std::to_string(i) + "]")));
    }
    if (root["wigner"]) cfg.wigner = parse_wigner(root["wigner"], origin + ".wigner");
    if (root["sweep"]) cfg.sweep = parse_sweep(root["sweep"], origin + ".sweep");
    cfg.output = root["output"] ? as_string(root["output"], origin + ".output")
                                : cfg.name + ".csv";
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace phonoline
