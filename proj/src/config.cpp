#include "authsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace authsim {

namespace {

struct Entry {
    int line;
    std::string value;
};

double parse_double(const Entry& e, const std::string& key) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(e.value, &used);
    } catch (const std::exception&) {
        throw ConfigError(e.line, key, "expected a number, got '" + e.value + "'");
    }
    if (used != e.value.size())
        throw ConfigError(e.line, key, "trailing characters after number in '" + e.value + "'");
    return v;
}

std::uint64_t parse_u64(const Entry& e, const std::string& key) {
    const double v = parse_double(e, key);
    if (v < 0.0 || v != std::floor(v) || v > 1.8e19)
        throw ConfigError(e.line, key, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            const auto last = line.find_last_not_of(" \t\r");
            line = line.substr(first, last - first + 1);
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(lineno, "", "expected key=value, got '" + line + "'");
            auto strip = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
            };
            const std::string key = strip(line.substr(0, eq));
            const std::string value = strip(line.substr(eq + 1));
            if (key.empty()) throw ConfigError(lineno, "", "empty key");
            if (entries.count(key))
                throw ConfigError(lineno, key, "duplicate key (first set on line " +
                                                   std::to_string(entries[key].line) + ")");
            entries[key] = {lineno, value};
        }
    }

    RunConfig cfg;
    auto take = [&entries](const std::string& key) -> std::optional<Entry> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        Entry e = it->second;
        entries.erase(it);
        return e;
    };

    if (auto e = take("scenario")) {
        try {
            cfg.scenario = make_scenario(e->value);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e->line, "scenario", ex.what());
        }
        if (cfg.scenario.detector.kind == DetectorKind::ocnn &&
            (cfg.scenario.name == "table2" || cfg.scenario.name == "table3"))
            cfg.detector = "all";
    }
    Scenario& s = cfg.scenario;

    // System parameters. n_channels first: it sets the vector lengths that
    // scalar alpha/lambda keys broadcast over.
    if (auto e = take("n_channels")) {
        const auto n = parse_u64(*e, "n_channels");
        if (n < 1) throw ConfigError(e->line, "n_channels", "must be >= 1");
        s.params.n_channels = n;
        s.params.alpha.assign(n, s.params.alpha.front());
        s.params.lambda.assign(n, s.params.lambda.front());
    }

    struct ParamKey {
        const char* key;
        double lo, hi;
        double* dst;
    };
    const ParamKey scalar_keys[] = {
        {"sigma2_i", 0.0, 1e9, &s.params.sigma2_i},
        {"sigma2_ii", 0.0, 1e9, &s.params.sigma2_ii},
        {"rho_ae", 0.0, 1.0, &s.params.rho_ae},
        {"rho_eb", 0.0, 1.0, &s.params.rho_eb},
        {"rho_ab", 0.0, 1.0, &s.params.rho_ab},
        {"sigma2_ae", 0.0, 1e9, &s.params.sigma2_ae},
        {"sigma2_eb", 0.0, 1e9, &s.params.sigma2_eb},
        {"target_pfa", 1e-12, 1.0, &s.target_pfa},
        {"ocnn_target_pfa", 1e-12, 1.0, &s.detector.ocnn_target_pfa},
        {"attack_x", -1.0, 1.0, &s.attack.exponent},
        {"attack_grid_step", 1e-6, 2.0, &s.attack_grid_step},
    };
    for (const auto& pk : scalar_keys) {
        if (auto e = take(pk.key)) {
            const double v = parse_double(*e, pk.key);
            if (!(v >= pk.lo && v <= pk.hi))
                throw ConfigError(e->line, pk.key,
                                  "value " + e->value + " outside [" + std::to_string(pk.lo) +
                                      ", " + std::to_string(pk.hi) + "]");
            *pk.dst = v;
        }
    }
    if (auto e = take("alpha")) {
        const double v = parse_double(*e, "alpha");
        if (!(v >= 0.0 && v <= 1.0))
            throw ConfigError(e->line, "alpha", "value " + e->value + " outside [0, 1]");
        s.params.alpha.assign(s.params.n_channels, v);
    }
    if (auto e = take("lambda")) {
        const double v = parse_double(*e, "lambda");
        if (!(v > 0.0)) throw ConfigError(e->line, "lambda", "must be > 0");
        s.params.lambda.assign(s.params.n_channels, v);
    }
    if (auto e = take("snr_i_db")) s.params.sigma2_i = std::pow(10.0, -parse_double(*e, "snr_i_db") / 10.0);
    if (auto e = take("snr_ii_db"))
        s.params.sigma2_ii = std::pow(10.0, -parse_double(*e, "snr_ii_db") / 10.0);

    if (auto e = take("seed")) {
        s.seed = parse_u64(*e, "seed");
        cfg.seed_explicit = true;
    }
    if (auto e = take("trials_h0")) {
        s.trials_h0 = parse_u64(*e, "trials_h0");
        if (s.trials_h0 < 1000) throw ConfigError(e->line, "trials_h0", "must be >= 1000");
    }
    if (auto e = take("trials_h1")) {
        s.trials_h1 = parse_u64(*e, "trials_h1");
        if (s.trials_h1 < 1000) throw ConfigError(e->line, "trials_h1", "must be >= 1000");
    }
    if (auto e = take("opt_budget")) s.opt_budget = parse_u64(*e, "opt_budget");
    if (auto e = take("attack_grid_budget")) s.attack_grid_budget = parse_u64(*e, "attack_grid_budget");
    if (auto e = take("ocnn_training")) {
        s.ocnn_training_size = parse_u64(*e, "ocnn_training");
        if (s.ocnn_training_size < 20) throw ConfigError(e->line, "ocnn_training", "must be >= 20");
    }
    if (auto e = take("ocnn_sessions")) {
        s.ocnn_sessions = parse_u64(*e, "ocnn_sessions");
        if (s.ocnn_sessions < 1) throw ConfigError(e->line, "ocnn_sessions", "must be >= 1");
    }
    if (auto e = take("cv_folds")) {
        const auto v = parse_u64(*e, "cv_folds");
        if (v < 2 || v > 100) throw ConfigError(e->line, "cv_folds", "must lie in [2, 100]");
        s.cv_folds = static_cast<int>(v);
    }

    if (auto e = take("attack")) {
        if (e->value == "llr")
            s.attack.kind = AttackStrategy::Kind::llr;
        else if (e->value == "exponent")
            s.attack.kind = AttackStrategy::Kind::exponent;
        else
            throw ConfigError(e->line, "attack", "expected llr or exponent, got '" + e->value + "'");
    }
    if (auto e = take("detector")) {
        static const char* allowed[] = {"llr",  "combined", "all",  "11NN",
                                        "1KNN", "J1NN",     "JKNN"};
        if (std::find_if(std::begin(allowed), std::end(allowed), [&](const char* a) {
                return e->value == a;
            }) == std::end(allowed))
            throw ConfigError(e->line, "detector",
                              "expected llr, combined, all, or an OCNN variant name");
        cfg.detector = e->value;
        if (e->value == "llr")
            s.detector.kind = DetectorKind::llr;
        else if (e->value == "combined")
            s.detector.kind = DetectorKind::combined;
        else if (e->value != "all") {
            s.detector.kind = DetectorKind::ocnn;
            s.detector.variant = ocnn_variant_from_string(e->value);
        }
    }
    if (auto e = take("calibration")) {
        if (e->value == "analytic")
            s.detector.calibration = LlrCalibration::analytic;
        else if (e->value == "analytic_plugin")
            s.detector.calibration = LlrCalibration::analytic_plugin;
        else if (e->value == "mc_quantile")
            s.detector.calibration = LlrCalibration::mc_quantile;
        else
            throw ConfigError(e->line, "calibration",
                              "expected analytic, analytic_plugin or mc_quantile");
    }
    if (auto e = take("matched_exponent")) {
        if (e->value == "true" || e->value == "1")
            s.detector.matched_exponent = true;
        else if (e->value == "false" || e->value == "0")
            s.detector.matched_exponent = false;
        else
            throw ConfigError(e->line, "matched_exponent", "expected true or false");
    }
    if (auto e = take("name")) s.name = e->value;

    if (auto e = take("out")) cfg.out_path = e->value;
    if (auto e = take("format")) {
        if (e->value == "csv")
            cfg.format = ReportFormat::csv;
        else if (e->value == "json")
            cfg.format = ReportFormat::json;
        else
            throw ConfigError(e->line, "format", "expected csv or json");
    }
    if (auto e = take("jobs")) {
        const auto v = parse_u64(*e, "jobs");
        if (v < 1 || v > 4096) throw ConfigError(e->line, "jobs", "must lie in [1, 4096]");
        cfg.jobs = static_cast<int>(v);
    }
    if (auto e = take("axis")) cfg.sweep_axis = e->value;
    if (auto e = take("values")) {
        std::istringstream vs(e->value);
        std::string tok;
        while (std::getline(vs, tok, ',')) {
            if (tok.empty()) continue;
            cfg.sweep_values.push_back(parse_double({e->line, tok}, "values"));
        }
    }

    if (!entries.empty()) {
        const auto& [key, entry] = *entries.begin();
        throw ConfigError(entry.line, key, "unknown key");
    }

    try {
        s.params.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(0, "", ex.what());
    }
    return cfg;
}

}  // namespace authsim
