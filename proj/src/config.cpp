#include "rcmetro/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rcmetro/errors.hpp"
#include "rcmetro/table.hpp"
#include "rcmetro/units.hpp"

namespace rcmetro {

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::rabi_exact: return "rabi_exact";
        case ModelKind::grwa: return "grwa";
        case ModelKind::dicke: return "dicke";
        case ModelKind::weak: return "weak";
        case ModelKind::levels: return "levels";
        case ModelKind::observables: return "observables";
        case ModelKind::lambda: return "lambda";
        case ModelKind::curvature: return "curvature";
    }
    return "?";
}

std::string to_string(GridAxis a) {
    switch (a) {
        case GridAxis::beta_omega: return "beta_omega";
        case GridAxis::g_over_omega: return "g_over_omega";
        case GridAxis::epsilon_over_omega: return "epsilon_over_omega";
        case GridAxis::gbar_over_omega: return "gbar_over_omega";
        case GridAxis::n_spins: return "n_spins";
    }
    return "?";
}

namespace {

const std::vector<std::string> kCurveKeys = {"n_spins", "epsilon", "g", "gbar", "beta_omega",
                                             "epsilon_ghz", "omega_ghz", "g_ghz", "temperature_mk"};

const std::set<std::string> kGlobalKeys = {
    "schema_version", "model", "units", "grid.axis", "grid.values", "grid.start", "grid.stop",
    "grid.count", "grid.spacing", "delta", "sector", "variance", "curvature", "fd_step", "n_max",
    "n_max_cap", "tol.ln_z", "tol.rel", "output.path", "output.format", "fit.window"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_real(const std::string& key, const std::string& v) {
    try {
        const double x = parse_real(v);
        if (!std::isfinite(x)) throw DomainError("");
        return x;
    } catch (const DomainError&) {
        throw ConfigError(key, "expected a finite number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_real(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError(key, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_real(key, trim(item)));
    return out;
}

template <class F>
auto enum_value(const std::string& key, const std::string& v, F parse) {
    try {
        return parse(v);
    } catch (const DomainError& e) {
        throw ConfigError(key, e.what());
    }
}

ModelKind parse_model(const std::string& v) {
    static const std::map<std::string, ModelKind> m = {
        {"rabi_exact", ModelKind::rabi_exact}, {"grwa", ModelKind::grwa},     {"dicke", ModelKind::dicke},
        {"weak", ModelKind::weak},             {"levels", ModelKind::levels}, {"observables", ModelKind::observables},
        {"lambda", ModelKind::lambda},         {"curvature", ModelKind::curvature}};
    const auto it = m.find(v);
    if (it == m.end()) throw DomainError("unknown model '" + v + "'");
    return it->second;
}

GridAxis parse_axis(const std::string& v) {
    static const std::map<std::string, GridAxis> m = {{"beta_omega", GridAxis::beta_omega},
                                                      {"g_over_omega", GridAxis::g_over_omega},
                                                      {"epsilon_over_omega", GridAxis::epsilon_over_omega},
                                                      {"gbar_over_omega", GridAxis::gbar_over_omega},
                                                      {"n_spins", GridAxis::n_spins}};
    const auto it = m.find(v);
    if (it == m.end()) throw DomainError("unknown axis '" + v + "'");
    return it->second;
}

CurvatureSource parse_curvature(const std::string& v) {
    if (v == "closed_form") return CurvatureSource::closed_form;
    if (v == "implicit") return CurvatureSource::implicit;
    throw DomainError("curvature must be closed_form|implicit, got '" + v + "'");
}

// Curve key the swept axis replaces.
std::string axis_key(GridAxis a) {
    switch (a) {
        case GridAxis::beta_omega: return "beta_omega";
        case GridAxis::g_over_omega: return "g";
        case GridAxis::epsilon_over_omega: return "epsilon";
        case GridAxis::gbar_over_omega: return "gbar";
        case GridAxis::n_spins: return "n_spins";
    }
    return "";
}

}  // namespace

SweepConfig parse_config(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::map<std::string, std::string> kv;
    {
        std::stringstream ss(text);
        std::string line;
        int lineno = 0;
        while (std::getline(ss, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
            if (kv.count(key)) throw ConfigError(key, "duplicate key");
            kv[key] = value;
            entries.emplace_back(key, value);
        }
    }
    const auto get = [&](const std::string& k) -> const std::string* {
        const auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
    };

    SweepConfig cfg;
    const auto* version = get("schema_version");
    if (!version) throw ConfigError("schema_version", "missing");
    cfg.schema_version = to_int("schema_version", *version);
    if (cfg.schema_version != kSchemaVersion) {
        throw ConfigError("schema_version", "unsupported version " + *version + " (expected 1)");
    }
    const auto* model = get("model");
    if (!model) throw ConfigError("model", "missing");
    cfg.model = enum_value("model", *model, parse_model);

    const auto* axis = get("grid.axis");
    if (!axis) throw ConfigError("grid.axis", "missing");
    cfg.axis = enum_value("grid.axis", *axis, parse_axis);

    if (const auto* v = get("grid.values")) {
        if (get("grid.start") || get("grid.stop") || get("grid.count")) {
            throw ConfigError("grid.values", "give either grid.values or grid.start/stop/count, not both");
        }
        cfg.values = to_list("grid.values", *v);
    } else {
        const auto* start = get("grid.start");
        const auto* stop = get("grid.stop");
        const auto* count = get("grid.count");
        if (!start || !stop || !count) throw ConfigError("grid", "need grid.values or grid.start, grid.stop, grid.count");
        const double a = to_real("grid.start", *start);
        const double b = to_real("grid.stop", *stop);
        const int n = to_int("grid.count", *count);
        if (n < 1) throw ConfigError("grid.count", "must be >= 1");
        const std::string spacing = get("grid.spacing") ? *get("grid.spacing") : "linear";
        if (spacing != "linear" && spacing != "log") throw ConfigError("grid.spacing", "must be linear|log");
        if (spacing == "log" && !(a > 0.0 && b > 0.0)) throw ConfigError("grid.spacing", "log spacing needs positive ends");
        for (int i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : double(i) / (n - 1);
            cfg.values.push_back(spacing == "log" ? a * std::pow(b / a, t) : a + (b - a) * t);
        }
    }
    if (cfg.values.empty()) throw ConfigError("grid.values", "grid is empty");
    std::sort(cfg.values.begin(), cfg.values.end());
    cfg.values.erase(std::unique(cfg.values.begin(), cfg.values.end()), cfg.values.end());
    for (double x : cfg.values) {
        const bool ok = cfg.axis == GridAxis::g_over_omega ? x >= 0.0 : x > 0.0;
        if (!ok) throw ConfigError("grid.values", "value " + format_real(x) + " out of range for " + to_string(cfg.axis));
        if (cfg.axis == GridAxis::n_spins && x != std::floor(x)) throw ConfigError("grid.values", "n_spins must be integers");
    }

    if (const auto* v = get("delta")) cfg.delta = enum_value("delta", *v, parse_delta_convention);
    else if (cfg.model == ModelKind::dicke) cfg.delta = DeltaConvention::per_spin;
    if (const auto* v = get("sector")) cfg.sectors = enum_value("sector", *v, parse_sector_mode);
    if (const auto* v = get("variance")) cfg.variance = enum_value("variance", *v, parse_variance_estimator);
    if (const auto* v = get("curvature")) cfg.curvature = enum_value("curvature", *v, parse_curvature);
    if (const auto* v = get("fd_step")) {
        cfg.fd_step = to_real("fd_step", *v);
        if (!(cfg.fd_step > 0.0)) throw ConfigError("fd_step", "must be > 0");
    }
    if (const auto* v = get("n_max")) {
        if (*v != "auto") {
            cfg.n_max = to_int("n_max", *v);
            if (cfg.n_max < 1) throw ConfigError("n_max", "must be >= 1 or auto");
        }
    }
    if (const auto* v = get("n_max_cap")) {
        cfg.n_max_cap = to_int("n_max_cap", *v);
        if (cfg.n_max_cap < 16) throw ConfigError("n_max_cap", "must be >= 16");
    }
    if (const auto* v = get("tol.ln_z")) cfg.ln_z_tol = to_real("tol.ln_z", *v);
    if (const auto* v = get("tol.rel")) cfg.rel_tol = to_real("tol.rel", *v);
    if (!(cfg.ln_z_tol > 0.0)) throw ConfigError("tol.ln_z", "must be > 0");
    if (!(cfg.rel_tol > 0.0)) throw ConfigError("tol.rel", "must be > 0");
    if (const auto* v = get("output.path")) cfg.output_path = *v;
    if (const auto* v = get("output.format")) {
        if (*v != "csv" && *v != "json") throw ConfigError("output.format", "must be csv|json");
        cfg.output_format = *v;
    }
    if (const auto* v = get("fit.window")) {
        const auto w = to_list("fit.window", *v);
        if (w.size() != 2 || !(w[0] < w[1])) throw ConfigError("fit.window", "expected 'lo, hi' with lo < hi");
        cfg.fit_window = std::make_pair(w[0], w[1]);
    }
    const std::string unit_mode = get("units") ? *get("units") : "omega";
    if (unit_mode != "omega" && unit_mode != "physical") throw ConfigError("units", "must be omega|physical");
    const bool physical = unit_mode == "physical";

    // Collect curve labels in order of first appearance and sort keys into buckets.
    std::vector<std::string> labels;
    std::map<std::string, std::map<std::string, std::string>> curve_kv;
    std::map<std::string, std::string> global_curve_kv;
    for (const auto& [key, value] : entries) {
        if (key.rfind("curve.", 0) == 0) {
            const auto dot = key.find('.', 6);
            if (dot == std::string::npos || dot == 6) throw ConfigError(key, "expected curve.<label>.<key>");
            const std::string label = key.substr(6, dot - 6);
            const std::string sub = key.substr(dot + 1);
            if (std::find(kCurveKeys.begin(), kCurveKeys.end(), sub) == kCurveKeys.end()) {
                cfg.warnings.push_back("unknown key '" + key + "' ignored");
                continue;
            }
            if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
            curve_kv[label][sub] = value;
        } else if (std::find(kCurveKeys.begin(), kCurveKeys.end(), key) != kCurveKeys.end()) {
            global_curve_kv[key] = value;
        } else if (!kGlobalKeys.count(key)) {
            cfg.warnings.push_back("unknown key '" + key + "' ignored");
        }
    }
    if (labels.empty()) labels.push_back("main");

    const std::string swept = axis_key(cfg.axis);
    for (const auto& label : labels) {
        auto merged = global_curve_kv;
        for (const auto& [k, v] : curve_kv[label]) merged[k] = v;
        const std::string prefix = label == "main" && !curve_kv.count(label) ? "" : "curve." + label + ".";
        const auto has = [&](const std::string& k) { return merged.count(k) > 0; };
        const auto path = [&](const std::string& k) {
            return curve_kv[label].count(k) ? prefix + k : k;
        };

        if (has(swept)) throw ConfigError(path(swept), "is the swept axis and cannot be fixed");

        CurveSpec c;
        c.label = label;
        if (physical) {
            for (const char* k : {"epsilon", "g", "gbar", "beta_omega"}) {
                if (has(k)) throw ConfigError(path(k), "not allowed with units = physical (use *_ghz / temperature_mk)");
            }
            for (const char* k : {"omega_ghz", "epsilon_ghz"}) {
                if (!has(k)) throw ConfigError(path(k), "required with units = physical");
            }
            const double om = to_real(path("omega_ghz"), merged["omega_ghz"]);
            const double ep = to_real(path("epsilon_ghz"), merged["epsilon_ghz"]);
            const double gg = has("g_ghz") ? to_real(path("g_ghz"), merged["g_ghz"]) : 0.0;
            double t_mk = 1.0;
            if (cfg.axis != GridAxis::beta_omega) {
                if (!has("temperature_mk")) throw ConfigError(path("temperature_mk"), "required with units = physical");
                t_mk = to_real(path("temperature_mk"), merged["temperature_mk"]);
            }
            try {
                const auto d = units::convert_units(ep, om, gg, t_mk);
                c.epsilon = d.epsilon;
                c.g = d.g;
                c.beta_omega = d.beta_omega;
            } catch (const DomainError& e) {
                throw ConfigError(path("omega_ghz"), e.what());
            }
        } else {
            for (const char* k : {"epsilon_ghz", "omega_ghz", "g_ghz", "temperature_mk"}) {
                if (has(k)) throw ConfigError(path(k), "requires units = physical");
            }
            if (has("epsilon")) c.epsilon = to_real(path("epsilon"), merged["epsilon"]);
            if (has("g")) c.g = to_real(path("g"), merged["g"]);
            if (has("gbar")) c.gbar = to_real(path("gbar"), merged["gbar"]);
            if (has("beta_omega")) c.beta_omega = to_real(path("beta_omega"), merged["beta_omega"]);
        }
        if (has("n_spins")) {
            c.n_spins = to_int(path("n_spins"), merged["n_spins"]);
            if (c.n_spins < 1) throw ConfigError(path("n_spins"), "must be >= 1");
        }
        if (!(c.epsilon >= 0.0)) throw ConfigError(path("epsilon"), "must be >= 0");
        if (!(c.g >= 0.0)) throw ConfigError(path("g"), "must be >= 0");
        if (!(c.beta_omega > 0.0)) throw ConfigError(path("beta_omega"), "must be > 0");

        if (cfg.model == ModelKind::dicke) {
            if (cfg.axis == GridAxis::g_over_omega) throw ConfigError("grid.axis", "dicke sweeps use gbar_over_omega");
            if (has("g")) {
                if (!has("n_spins")) throw ConfigError(path("g"), "per-spin g for the dicke model needs n_spins");
                if (has("gbar")) throw ConfigError(path("g"), "give g or gbar, not both");
                c.gbar = std::sqrt(double(c.n_spins)) * c.g / 2.0;
            }
            if (cfg.axis != GridAxis::gbar_over_omega && !(c.gbar > 0.0)) {
                throw ConfigError(path("gbar"), "dicke model needs gbar > 0");
            }
            if (cfg.axis != GridAxis::epsilon_over_omega && !(c.epsilon > 0.0)) {
                throw ConfigError(path("epsilon"), "dicke model needs epsilon > 0");
            }
        } else if (cfg.axis == GridAxis::gbar_over_omega) {
            throw ConfigError("grid.axis", "gbar_over_omega is only valid for the dicke model");
        } else if (has("gbar")) {
            throw ConfigError(path("gbar"), "gbar is only valid for the dicke model");
        }
        cfg.curves.push_back(c);
    }
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

CurveSpec point_spec(const SweepConfig& cfg, const CurveSpec& curve, double v) {
    CurveSpec c = curve;
    switch (cfg.axis) {
        case GridAxis::beta_omega: c.beta_omega = v; break;
        case GridAxis::g_over_omega: c.g = v; break;
        case GridAxis::epsilon_over_omega: c.epsilon = v; break;
        case GridAxis::gbar_over_omega: c.gbar = v; break;
        case GridAxis::n_spins: c.n_spins = static_cast<int>(v); break;
    }
    return c;
}

}  // namespace rcmetro
