#include "authsim/report.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace authsim {

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double reported_pfa(const ErrorRates& r) {
    if (r.zero_event_fa && r.trials_h0 > 0) return 1.0 / static_cast<double>(r.trials_h0);
    return r.pfa;
}

double reported_pmd(const ErrorRates& r) {
    if (r.zero_event_md && r.trials_h1 > 0) return 1.0 / static_cast<double>(r.trials_h1);
    return r.pmd;
}

}  // namespace

std::string to_csv(const std::vector<ReportRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("to_csv: empty result set");
    std::string out =
        "scenario,axis_value,detector,attack,pfa,pfa_lo,pfa_hi,pmd,pmd_lo,pmd_hi,"
        "trials_h0,trials_h1,zero_event\n";
    for (const auto& row : rows) {
        const ErrorRates& r = row.rates;
        out += row.scenario;
        out += ',' + fmt6(row.axis_value);
        out += ',' + row.detector;
        out += ',' + row.attack;
        out += ',' + fmt6(reported_pfa(r));
        out += ',' + fmt6(r.pfa_ci.lo);
        out += ',' + fmt6(r.pfa_ci.hi);
        out += ',' + fmt6(reported_pmd(r));
        out += ',' + fmt6(r.pmd_ci.lo);
        out += ',' + fmt6(r.pmd_ci.hi);
        out += ',' + std::to_string(r.trials_h0);
        out += ',' + std::to_string(r.trials_h1);
        out += ',';
        out += r.zero_event() ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<ReportRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("to_json: empty result set");
    // Round through the printed representation so both formats carry the
    // same precision.
    auto num = [](double v) { return std::stod(fmt6(v)); };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        const ErrorRates& r = row.rates;
        arr.push_back({{"scenario", row.scenario},
                       {"axis_value", num(row.axis_value)},
                       {"detector", row.detector},
                       {"attack", row.attack},
                       {"pfa", num(reported_pfa(r))},
                       {"pfa_lo", num(r.pfa_ci.lo)},
                       {"pfa_hi", num(r.pfa_ci.hi)},
                       {"pmd", num(reported_pmd(r))},
                       {"pmd_lo", num(r.pmd_ci.lo)},
                       {"pmd_hi", num(r.pmd_ci.hi)},
                       {"trials_h0", r.trials_h0},
                       {"trials_h1", r.trials_h1},
                       {"zero_event", r.zero_event()}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace authsim
