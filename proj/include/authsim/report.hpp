#pragma once

#include <string>
#include <vector>

#include "authsim/experiments.hpp"

namespace authsim {

// One emitted result line: scenario name, the swept axis value (or the
// operating point's n_channels when no sweep ran), the detector and attack
// labels, and the measured rates.
struct ReportRow {
    std::string scenario;
    double axis_value = 0.0;
    std::string detector;
    std::string attack;
    ErrorRates rates;
};

// CSV document with the fixed column set
//   scenario,axis_value,detector,attack,pfa,pfa_lo,pfa_hi,pmd,pmd_lo,pmd_hi,
//   trials_h0,trials_h1,zero_event
// Floating-point values carry 6 significant digits; zero-event rates are
// printed as their 1/trials upper bound.
std::string to_csv(const std::vector<ReportRow>& rows);

// JSON array mirroring the CSV fields (numbers rounded to the same printed
// precision).
std::string to_json(const std::vector<ReportRow>& rows);

}  // namespace authsim
