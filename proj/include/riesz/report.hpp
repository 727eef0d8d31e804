#pragma once

#include <optional>
#include <string>
#include <vector>

namespace riesz {

/// Outcome of one verified property. Slack follows the convention
/// slack = rhs - lhs, componentwise minimum over all compared components;
/// a slack below the scaled tolerance marks a failure.
struct Report {
    std::string property;
    long long trials = 0;
    double worst_slack = 0.0;
    bool pass = false;
    std::optional<long long> n;  ///< locating index, when the check is grid-shaped
    std::optional<long long> m;
    std::string note;
};

std::string to_json(const std::vector<Report>& reports);

/// Renders a double with the shortest representation that round-trips.
std::string format_double(double v);

}  // namespace riesz
