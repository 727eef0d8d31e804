#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riesz/instance_io.hpp"
#include "riesz/report.hpp"

namespace riesz {

/// Configuration of one CLI run. All randomness is derived from the seed;
/// identical configurations produce byte-identical reports.
struct RunConfig {
    std::string command;        ///< validate|norms|mixing|ned|ar1-demo|lln|all
    std::string instance_path;  ///< instance or scenario file, command-dependent
    std::uint64_t seed = 1;
    std::size_t cap = 12;
    int window = 0;  ///< 0 picks the per-command default
    std::string out_path;
    std::string format = "json";  ///< json|csv
};

/// One line of the run report.
struct Row {
    std::string suite;
    std::string property;
    std::string instance;
    std::optional<long long> n;
    std::optional<long long> m;
    std::optional<long long> block;
    std::optional<double> lhs;
    std::optional<double> rhs;
    double slack = 0.0;
    bool pass = false;
};

struct RunOutput {
    std::vector<Row> rows;
    /// Auxiliary exports keyed by file suffix (written next to out_path).
    std::map<std::string, std::string> aux;
    bool ok() const;
};

/// Executes the suites for the configured command and collects the report.
RunOutput run_suites(const RunConfig& config);

std::string rows_to_json(const std::vector<Row>& rows);
std::string rows_to_csv(const std::vector<Row>& rows);

/// Full CLI entry: runs the suites, writes the report (stdout when no out
/// path is given), and returns the process exit status. Any failed check
/// or an empty suite is a nonzero exit.
int run(const RunConfig& config);

/// The worked four-atom example: uniform weights, T trivial, U = {ab|cd},
/// V = {a|bcd}; used as the built-in demo instance.
Instance worked_mixing_instance();

}  // namespace riesz
