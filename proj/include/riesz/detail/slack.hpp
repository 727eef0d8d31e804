#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "riesz/lattice.hpp"
#include "riesz/report.hpp"

namespace riesz::detail {

/// Accumulates the componentwise minimum of rhs - lhs across a run of
/// inequality checks, flagging failure under the scaled tolerance policy.
struct SlackTracker {
    double worst = std::numeric_limits<double>::infinity();
    bool pass = true;

    void take(const LatticeVector& lhs, const LatticeVector& rhs) {
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            take_scalar(lhs[i], rhs[i]);
        }
    }

    void take_scalar(double lhs, double rhs) {
        double s = rhs - lhs;
        worst = std::min(worst, s);
        if (s < -ineq_tolerance(std::max(std::fabs(lhs), std::fabs(rhs)))) {
            pass = false;
        }
    }

    /// Treats |rhs - lhs| as a violation, for identities rather than
    /// one-sided bounds.
    void take_equality(const LatticeVector& lhs, const LatticeVector& rhs) {
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            double s = -std::fabs(rhs[i] - lhs[i]);
            worst = std::min(worst, s);
            if (s < -ineq_tolerance(std::max(std::fabs(lhs[i]), std::fabs(rhs[i])))) {
                pass = false;
            }
        }
    }

    Report report(std::string property, long long trials) const {
        Report r;
        r.property = std::move(property);
        r.trials = trials;
        r.worst_slack = std::isfinite(worst) ? worst : 0.0;
        r.pass = pass;
        return r;
    }
};

}  // namespace riesz::detail
