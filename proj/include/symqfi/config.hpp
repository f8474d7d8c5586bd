#pragma once

// Run configuration for the command-line front end.
//
// The file of record is INI-style: `key = value` lines grouped under
// [model], [psf], [measurement], [sweep], [study], [decompose], [output] and
// [check] sections. Overrides given as "section.key=value" replace file
// values. Unknown sections or keys are errors.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symqfi/estimation.hpp"
#include "symqfi/simulate.hpp"

namespace symqfi {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RunConfig {
public:
    std::string command;

    /// Parses INI text; `source` names the file in diagnostics.
    static RunConfig parse(const std::string& command, const std::string& text, const std::string& source = "<config>");
    static RunConfig load(const std::string& command, const std::string& path);
    static RunConfig defaults(const std::string& command);

    /// "section.key=value"
    void apply_override(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::vector<double> get_list(const std::string& key, std::vector<double> fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

    /// FNV-1a 64 of the command and the sorted key=value lines, as 16 hex digits.
    std::string hash() const;

private:
    std::map<std::string, std::string> values_;
};

const std::vector<std::string>& known_config_keys();

std::vector<Point2> parse_point_list(const std::string& text, const std::string& key);

ModelFamily build_model(const RunConfig& cfg);
ParameterVector model_parameters(const RunConfig& cfg, const ModelFamily& model);
std::optional<AnalyticCase> analytic_case(const RunConfig& cfg);

/// measurement.basis: eigenbasis | character | direct | netlist
/// (netlist reads measurement.netlist).
ComplexMatrix measurement_basis(const RunConfig& cfg, const ModelFamily& model, const ParameterVector& theta);

StudyConfig study_config(const RunConfig& cfg);

}  // namespace symqfi
