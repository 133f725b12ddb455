#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "authsim/config.hpp"
#include "authsim/report.hpp"

using namespace authsim;

TEST_CASE("minimal document selects a scenario and seed") {
    const RunConfig cfg = parse_config("scenario=table3\nseed=42\n");
    CHECK(cfg.scenario.name == "table3");
    CHECK(cfg.scenario.seed == 42);
    CHECK(cfg.seed_explicit);
    CHECK(cfg.detector == "all");
    CHECK(cfg.scenario.params.rho_ae == 0.8);
    CHECK(cfg.scenario.trials_h0 == 1000000);  // registry defaults survive
}

TEST_CASE("violations carry the line number and key") {
    try {
        parse_config("seed=1\nalpha=1.5\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
        CHECK(e.key == "alpha");
    }
    CHECK_THROWS_AS(parse_config("alpha=banana\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("rho_ae=0.2trailing\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("frobnicate=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("seed\n"), ConfigError);
    try {
        parse_config("seed=1\n# comment\nseed=2\n");
        FAIL("expected duplicate-key error");
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
        CHECK(e.key == "seed");
    }
}

TEST_CASE("comments and blank lines are ignored") {
    const RunConfig cfg = parse_config("# full line comment\n\nseed=9 # trailing comment\n");
    CHECK(cfg.scenario.seed == 9);
}

TEST_CASE("an inline scenario reproduces the registry operating point") {
    const RunConfig inline_cfg = parse_config(
        "n_channels=3\n"
        "alpha=1\n"
        "rho_ae=0.8\n"
        "snr_i_db=15\n"
        "sigma2_ii=0.01\n"
        "target_pfa=0.01\n"
        "ocnn_target_pfa=0.01\n");
    const Scenario reg = scenario_at(make_scenario("table3"), "n_channels", 3.0);

    const SystemParams& a = inline_cfg.scenario.params;
    const SystemParams& b = reg.params;
    CHECK(a.n_channels == b.n_channels);
    CHECK(a.alpha == b.alpha);
    CHECK(a.lambda == b.lambda);
    CHECK(a.sigma2_i == b.sigma2_i);
    CHECK(a.sigma2_ii == b.sigma2_ii);
    CHECK(a.rho_ae == b.rho_ae);
    CHECK(a.rho_eb == b.rho_eb);
    CHECK(a.rho_ab == b.rho_ab);
    CHECK(inline_cfg.scenario.target_pfa == reg.target_pfa);
    CHECK(inline_cfg.scenario.detector.ocnn_target_pfa == reg.detector.ocnn_target_pfa);
}

TEST_CASE("selector keys are validated") {
    CHECK(parse_config("detector=1KNN\n").scenario.detector.variant == OcnnVariant::nn1k);
    CHECK(parse_config("detector=combined\n").scenario.detector.kind == DetectorKind::combined);
    CHECK(parse_config("format=json\n").format == ReportFormat::json);
    CHECK(parse_config("attack=exponent\nattack_x=-0.5\n").scenario.attack.exponent == -0.5);
    CHECK(parse_config("calibration=mc_quantile\n").scenario.detector.calibration ==
          LlrCalibration::mc_quantile);
    CHECK_THROWS_AS(parse_config("detector=5NN\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("format=xml\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("attack=replay\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("attack_x=2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("trials_h0=10\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("jobs=0\n"), ConfigError);
    CHECK(parse_config("values=1,2,3\n").sweep_values == std::vector<double>{1.0, 2.0, 3.0});
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, sep)) out.push_back(tok);
    return out;
}

ReportRow sample_row(double pfa_events, double md_events, std::uint64_t n) {
    ReportRow row;
    row.scenario = "test";
    row.axis_value = 3.0;
    row.detector = "llr";
    row.attack = "exponent(1)";
    row.rates.trials_h0 = n;
    row.rates.trials_h1 = n;
    row.rates.fa_events = static_cast<std::uint64_t>(pfa_events);
    row.rates.md_events = static_cast<std::uint64_t>(md_events);
    row.rates.pfa = pfa_events / static_cast<double>(n);
    row.rates.pmd = md_events / static_cast<double>(n);
    row.rates.pfa_ci = wilson_interval(row.rates.fa_events, n);
    row.rates.pmd_ci = wilson_interval(row.rates.md_events, n);
    row.rates.zero_event_fa = row.rates.fa_events == 0;
    row.rates.zero_event_md = row.rates.md_events == 0;
    return row;
}

}  // namespace

TEST_CASE("csv layout and zero-event convention") {
    const auto doc = to_csv({sample_row(123, 0, 1000000)});
    const auto lines = split(doc, '\n');
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] ==
          "scenario,axis_value,detector,attack,pfa,pfa_lo,pfa_hi,pmd,pmd_lo,pmd_hi,"
          "trials_h0,trials_h1,zero_event");
    const auto cells = split(lines[1], ',');
    REQUIRE(cells.size() == 13);
    CHECK(cells[0] == "test");
    CHECK(cells[2] == "llr");
    // Zero missed detections: printed as the 1/trials upper bound.
    CHECK(std::stod(cells[7]) == doctest::Approx(1e-6));
    CHECK(cells[12] == "true");

    // Every emitted rate lies inside its emitted interval.
    CHECK(std::stod(cells[4]) >= std::stod(cells[5]));
    CHECK(std::stod(cells[4]) <= std::stod(cells[6]));
    CHECK(std::stod(cells[7]) >= std::stod(cells[8]));
    CHECK(std::stod(cells[7]) <= std::stod(cells[9]));

    CHECK_THROWS_AS(to_csv({}), std::invalid_argument);
    CHECK_THROWS_AS(to_json({}), std::invalid_argument);
}

TEST_CASE("csv and json carry identical values at printed precision") {
    const std::vector<ReportRow> rows{sample_row(123, 45678, 1000000),
                                      sample_row(0, 999999, 1000000)};
    const auto csv_lines = split(to_csv(rows), '\n');
    const auto parsed = nlohmann::json::parse(to_json(rows));
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cells = split(csv_lines[1 + i], ',');
        const auto& obj = parsed[i];
        const std::string scenario = obj["scenario"];
        const std::string detector = obj["detector"];
        CHECK(scenario == cells[0]);
        CHECK(detector == cells[2]);
        const double pfa = obj["pfa"];
        const double pfa_lo = obj["pfa_lo"];
        const double pfa_hi = obj["pfa_hi"];
        const double pmd = obj["pmd"];
        const double pmd_lo = obj["pmd_lo"];
        const double pmd_hi = obj["pmd_hi"];
        CHECK(pfa == std::stod(cells[4]));
        CHECK(pfa_lo == std::stod(cells[5]));
        CHECK(pfa_hi == std::stod(cells[6]));
        CHECK(pmd == std::stod(cells[7]));
        CHECK(pmd_lo == std::stod(cells[8]));
        CHECK(pmd_hi == std::stod(cells[9]));
        const std::uint64_t n0 = obj["trials_h0"];
        const bool zero_event = obj["zero_event"];
        CHECK(n0 == std::stoull(cells[10]));
        CHECK(zero_event == (cells[12] == "true"));
    }
}

TEST_CASE("six significant digits in both formats") {
    ReportRow row = sample_row(1, 3, 3000000);
    row.rates.pfa = 0.123456789;
    row.rates.pfa_ci = {0.12, 0.13};
    const auto cells = split(split(to_csv({row}), '\n')[1], ',');
    CHECK(cells[4] == "0.123457");
}
