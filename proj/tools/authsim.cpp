// Batch front-end: run registry scenarios or inline parameter sets, sweep an
// axis, and emit machine-readable error-rate reports.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "authsim/config.hpp"
#include "authsim/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCalibration = 3;

struct CliOverrides {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t trials_h0 = 0;
    std::uint64_t trials_h1 = 0;
    int jobs = 0;
    std::string scenario;
    std::string axis;
    std::string values;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "key=value configuration file");
    cmd->add_option("--scenario", o.scenario, "registry scenario name");
    cmd->add_option("--seed", o.seed, "master seed")->each([&o](const std::string&) {
        o.seed_set = true;
    });
    cmd->add_option("--trials-h0", o.trials_h0, "legitimate-trial budget");
    cmd->add_option("--trials-h1", o.trials_h1, "forged-trial budget");
    cmd->add_option("--jobs", o.jobs, "worker threads");
    cmd->add_option("--out", o.out_path, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

authsim::RunConfig load_config(const CliOverrides& o) {
    std::string text;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw authsim::ConfigError(0, "", "cannot open config '" + o.config_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    if (!o.scenario.empty()) text = "scenario=" + o.scenario + "\n" + text;
    authsim::RunConfig cfg = authsim::parse_config(text);

    if (o.seed_set) {
        cfg.scenario.seed = o.seed;
        cfg.seed_explicit = true;
    }
    if (!cfg.seed_explicit) {
        if (const char* env = std::getenv("AUTHSIM_SEED")) {
            try {
                cfg.scenario.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw authsim::ConfigError(0, "AUTHSIM_SEED", "not a valid seed");
            }
        }
    }
    if (o.trials_h0 != 0) cfg.scenario.trials_h0 = o.trials_h0;
    if (o.trials_h1 != 0) cfg.scenario.trials_h1 = o.trials_h1;
    if (o.jobs != 0) cfg.jobs = o.jobs;
    if (!o.out_path.empty()) cfg.out_path = o.out_path;
    if (o.format == "csv") cfg.format = authsim::ReportFormat::csv;
    if (o.format == "json") cfg.format = authsim::ReportFormat::json;
    return cfg;
}

std::string attack_label(const authsim::AttackStrategy& a) {
    if (a.kind == authsim::AttackStrategy::Kind::llr) return "llr";
    char buf[32];
    std::snprintf(buf, sizeof buf, "exponent(%g)", a.exponent);
    return buf;
}

std::string detector_label(const authsim::Scenario& s) {
    switch (s.detector.kind) {
        case authsim::DetectorKind::llr: return "llr";
        case authsim::DetectorKind::combined: return "combined";
        case authsim::DetectorKind::ocnn: return authsim::to_string(s.detector.variant);
    }
    return "?";
}

// One operating point -> one row (single detector) or three rows (all
// detectors at the classifier-aligned false-alarm level).
void emit_point(std::vector<authsim::ReportRow>& rows, const authsim::RunConfig& cfg,
                const authsim::Scenario& sc, double axis_value) {
    if (cfg.detector == "all") {
        const authsim::TableCell cell = authsim::run_table_cell(sc, cfg.jobs);
        authsim::AttackStrategy comb_attack =
            authsim::AttackStrategy::exponent_attack(cell.attack_exponent);
        rows.push_back({sc.name, axis_value, "llr", attack_label(sc.attack), cell.llr});
        rows.push_back({sc.name, axis_value, "combined",
                        sc.detector.matched_exponent ? attack_label(comb_attack)
                                                     : attack_label(sc.attack),
                        cell.combined});
        rows.push_back({sc.name, axis_value, authsim::to_string(sc.detector.variant),
                        attack_label(sc.attack), cell.ocnn});
        return;
    }
    const bool matched = sc.detector.kind == authsim::DetectorKind::combined &&
                         sc.detector.matched_exponent;
    rows.push_back({sc.name, axis_value, detector_label(sc),
                    matched ? "exponent(matched)" : attack_label(sc.attack),
                    authsim::run_scenario(sc, cfg.jobs)});
}

void write_report(const authsim::RunConfig& cfg, const std::vector<authsim::ReportRow>& rows) {
    const std::string doc =
        cfg.format == authsim::ReportFormat::csv ? authsim::to_csv(rows) : authsim::to_json(rows);
    if (cfg.out_path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out || !(out << doc))
        throw authsim::ConfigError(0, "out", "cannot write '" + cfg.out_path + "'");
}

int cmd_run(const CliOverrides& o) {
    const authsim::RunConfig cfg = load_config(o);
    std::vector<authsim::ReportRow> rows;
    emit_point(rows, cfg, cfg.scenario,
               static_cast<double>(cfg.scenario.params.n_channels));
    write_report(cfg, rows);
    return kExitOk;
}

int cmd_sweep(const CliOverrides& o) {
    authsim::RunConfig cfg = load_config(o);
    if (!o.axis.empty()) cfg.sweep_axis = o.axis;
    if (!o.values.empty()) {
        cfg.sweep_values.clear();
        std::istringstream vs(o.values);
        std::string tok;
        while (std::getline(vs, tok, ','))
            if (!tok.empty()) cfg.sweep_values.push_back(std::stod(tok));
    }
    if (cfg.sweep_axis.empty())
        throw authsim::ConfigError(0, "axis", "sweep requires an axis");
    std::vector<authsim::ReportRow> rows;
    for (double v : cfg.sweep_values) {
        const authsim::Scenario sc = authsim::scenario_at(cfg.scenario, cfg.sweep_axis, v);
        emit_point(rows, cfg, sc, v);
    }
    if (rows.empty()) {
        std::cerr << "sweep: empty value list, nothing to do\n";
        return kExitOk;
    }
    write_report(cfg, rows);
    return kExitOk;
}

int cmd_list() {
    for (const auto& name : authsim::scenario_names())
        std::cout << name << ": " << authsim::scenario_description(name) << "\n";
    return kExitOk;
}

int cmd_tune(const CliOverrides& o) {
    const authsim::RunConfig cfg = load_config(o);
    authsim::Scenario sc = cfg.scenario;
    if (sc.detector.kind != authsim::DetectorKind::ocnn)
        sc.detector.kind = authsim::DetectorKind::ocnn;
    const authsim::OcnnModel model = authsim::tune_ocnn_for_scenario(sc);
    if (cfg.out_path.empty()) {
        authsim::save_ocnn_model(model, std::cout);
    } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw authsim::ConfigError(0, "out", "cannot write '" + cfg.out_path + "'");
        authsim::save_ocnn_model(model, out);
    }
    std::cerr << "tuned " << authsim::to_string(model.variant) << ": j=" << model.j
              << " k=" << model.k << " theta_d=" << model.theta_d << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator for channel-based authentication"};
    app.require_subcommand(1);

    CliOverrides o;
    CLI::App* run = app.add_subcommand("run", "run one scenario");
    add_common_options(run, o);
    CLI::App* sweep = app.add_subcommand("sweep", "run a scenario across an axis");
    add_common_options(sweep, o);
    sweep->add_option("--axis", o.axis,
                      "sweep axis: n_channels, alpha, rho_ae, target_pfa, snr");
    sweep->add_option("--values", o.values, "comma-separated axis values");
    CLI::App* list = app.add_subcommand("list-scenarios", "list registry scenarios");
    CLI::App* tune = app.add_subcommand("tune-ocnn", "fit and export a classifier model");
    add_common_options(tune, o);

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(o);
        if (sweep->parsed()) return cmd_sweep(o);
        if (list->parsed()) return cmd_list();
        if (tune->parsed()) return cmd_tune(o);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitConfig;
    } catch (const authsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const authsim::CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return kExitCalibration;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
