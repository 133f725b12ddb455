#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "authsim/experiments.hpp"

namespace authsim {

// Configuration error with the offending line and key attached.
struct ConfigError : std::runtime_error {
    ConfigError(int line_, std::string key_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) +
                             (key_.empty() ? "" : " (key '" + key_ + "')") + ": " + what_),
          line(line_),
          key(std::move(key_)) {}
    int line;
    std::string key;
};

enum class ReportFormat { csv, json };

// Parsed batch-run configuration: a scenario (named or assembled inline)
// plus run-control settings.
struct RunConfig {
    Scenario scenario;
    std::string detector = "";  // "", llr, combined, 11NN/1KNN/J1NN/JKNN, all
    std::string out_path = "";  // empty: stdout
    ReportFormat format = ReportFormat::csv;
    int jobs = 1;
    std::string sweep_axis = "";
    std::vector<double> sweep_values;
    bool seed_explicit = false;  // seed came from the document (else env/default applies)
};

// Parses a line-oriented key=value document ('#' starts a comment). Unknown
// and duplicate keys are rejected; every violation reports its line number
// and key. Omitted keys fall back to the named scenario's settings (or the
// built-in defaults for fully inline scenarios).
RunConfig parse_config(const std::string& text);

}  // namespace authsim
