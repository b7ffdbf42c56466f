#pragma once

#include "kuznetsov/testfn.hpp"
#include "kuznetsov/whittaker.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kuznetsov {

// Environment variable naming the default config file.
inline constexpr const char* kConfigEnvVar = "KUZNETSOV_LAB_CONFIG";

struct RunConfig {
    double quad_tol = 1e-8;      // relative tolerance handed to every quadrature
    double identity_tol = 1e-9;  // threshold for floating-point identity checks
    int nodes_per_unit = 16;
    double truncation = 0.0;     // <= 0: automatic
    int threads = 0;             // 0: all available cores
    std::string format = "json"; // json | csv
    std::uint64_t seed = 7;
    bool timings = false;        // include wall-clock runtimes (breaks byte-identical output)

    QuadratureSpec quadrature() const;
    // Threshold for log-slope fits: the base value, widened by one unit per decade of quad_tol above 1e-8.
    double fit_threshold(double base) const;
    void set(const std::string& key, const std::string& value);  // DomainError on unknown keys or bad values
    void validate() const;
    std::map<std::string, std::string> to_map() const;
};

// key=value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
// Defaults, then the file named by the environment variable (if set).
RunConfig default_config();

struct VerificationReport {
    std::string name;
    std::string anchor;         // identifier of the identity or bound being checked
    std::string inputs_digest;  // FNV-1a of the canonical input description
    bool pass = false;
    bool error = false;         // the verifier threw
    double max_error = 0.0;
    double runtime = 0.0;       // seconds
    std::string detail;
};

enum class SuiteSelector { Combinatorics, Geometry, Special, Whittaker, Testfn, Trace, All };
SuiteSelector parse_selector(const std::string& s);  // DomainError on unknown names
std::string selector_name(SuiteSelector s);

std::vector<VerificationReport> run_suite(SuiteSelector sel, const RunConfig& cfg);

std::string fnv1a_hex(const std::string& s);

std::string reports_to_json(const std::vector<VerificationReport>& r, bool timings);
std::string reports_to_csv(const std::vector<VerificationReport>& r, bool timings);

// T,value,log_value rows to `path` and {slope, predicted, residual, ...} to `path` + ".json".
void emit_scaling_csv(const ScalingFit& fit, const std::string& path);
// Reads back the T and value columns written by emit_scaling_csv.
std::pair<std::vector<double>, std::vector<double>> read_scaling_csv(const std::string& path);

}  // namespace kuznetsov
