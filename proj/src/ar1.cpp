#include "riesz/ar1.hpp"

#include <algorithm>
#include <cmath>

#include "riesz/detail/slack.hpp"

namespace riesz {

using detail::SlackTracker;

namespace {

constexpr double kContractionMargin = 1e-6;

void require_contractive(const LatticeVector& coeff_abs, bool theta_error) {
    if (max_component(coeff_abs) > 1.0 - kContractionMargin) {
        if (theta_error) {
            throw ThetaNotContractive("|theta| must stay below 1 by at least 1e-6");
        }
        throw NotContractive("the coefficient must stay below 1 by at least 1e-6");
    }
}

}  // namespace

ProcessWindow center_noise(const ProcessWindow& raw, const CondExpOperator& T) {
    detail::require_same_space(raw.space(), T.space(), "center_noise");
    std::vector<LatticeVector> out;
    out.reserve(raw.size());
    for (const auto& r : raw.vectors()) {
        out.push_back(r - T.apply(r));
    }
    return ProcessWindow(raw.start(), std::move(out));
}

ProcessWindow random_centered_noise(const CondExpOperator& T, int start, int steps, double scale,
                                    Rng& rng) {
    if (steps < 1) {
        throw ValidationError("noise window needs at least one step");
    }
    std::vector<LatticeVector> raw;
    raw.reserve(std::size_t(steps));
    for (int s = 0; s < steps; ++s) {
        std::vector<double> vals(T.space()->size());
        for (double& v : vals) {
            v = rng.uniform(-scale, scale);
        }
        raw.emplace_back(T.space(), std::move(vals));
    }
    return center_noise(ProcessWindow(start, std::move(raw)), T);
}

ProcessWindow random_sign_noise(const CondExpOperator& T, int start, int steps, double scale,
                                Rng& rng) {
    if (steps < 1) {
        throw ValidationError("noise window needs at least one step");
    }
    std::vector<LatticeVector> raw;
    raw.reserve(std::size_t(steps));
    for (int s = 0; s < steps; ++s) {
        std::vector<double> vals(T.space()->size());
        for (double& v : vals) {
            v = rng.uniform_int(0, 1) ? scale : -scale;
        }
        raw.emplace_back(T.space(), std::move(vals));
    }
    return center_noise(ProcessWindow(start, std::move(raw)), T);
}

Ar1Instance generate_ar1(const LatticeVector& theta, const ProcessWindow& noise,
                         const CondExpOperator& T) {
    detail::require_same_space(theta.space(), T.space(), "generate_ar1");
    detail::require_same_space(noise.space(), T.space(), "generate_ar1");
    if (!T.in_range(theta, 1e-12 * (1.0 + max_abs(theta)))) {
        throw ThetaNotInRangeOfT("theta must be constant on the conditioning blocks");
    }
    require_contractive(abs(theta), true);
    for (const auto& eps : noise.vectors()) {
        if (max_abs(T.apply(eps)) > 1e-9 * (1.0 + max_abs(eps))) {
            throw NonZeroConditionalMean("AR(1) noise must have conditional mean zero");
        }
    }

    std::vector<LatticeVector> values;
    values.reserve(noise.size());
    LatticeVector prev = LatticeVector::zero(theta.space());
    for (const auto& eps : noise.vectors()) {
        prev = multiply(theta, prev) + eps;
        values.push_back(prev);
    }
    ProcessWindow process(noise.start(), std::move(values));

    // cross-check the recursion against the expanded geometric form; on
    // long windows a logarithmic sample of indices keeps this linear
    std::vector<int> sample;
    for (int n = process.start(); n <= process.end() && n < process.start() + 32; ++n) {
        sample.push_back(n);
    }
    for (int step = 64; process.start() + step - 1 <= process.end(); step *= 2) {
        sample.push_back(process.start() + step - 1);
    }
    sample.push_back(process.end());
    for (int n : sample) {
        LatticeVector expansion = LatticeVector::zero(theta.space());
        LatticeVector power = LatticeVector::unit(theta.space());
        for (int i = 0; n - i >= noise.start(); ++i) {
            expansion += multiply(power, noise.at(n - i));
            power = multiply(power, theta);
        }
        if (!approx_equal(expansion, process.at(n), 1e-9 * (1.0 + max_abs(process.at(n))))) {
            throw VerificationFailed("AR(1) recursion disagrees with its expansion");
        }
    }

    LatticeVector g = LatticeVector::zero(theta.space());
    for (const auto& eps : noise.vectors()) {
        g = sup(g, norm(eps, T, Lp::two).value);
    }
    return Ar1Instance{theta, noise, std::move(process), std::move(g)};
}

NedCertificate ar1_ned_certificate(const Ar1Instance& inst) {
    const SpacePtr& space = inst.theta.space();
    const LatticeVector e = LatticeVector::unit(space);
    const LatticeVector ta = abs(inst.theta);
    require_contractive(ta, true);

    NedCertificate cert;
    cert.p = Lp::two;
    cert.start = inst.process.start();
    cert.d.assign(inst.process.size(), inst.g_bound);

    // xi_m = |theta|^{m+1} / (e - |theta|)
    std::vector<double> denom(space->size());
    for (std::size_t i = 0; i < space->size(); ++i) {
        denom[i] = 1.0 / (1.0 - ta[i]);
    }
    LatticeVector inv(space, std::move(denom));
    LatticeVector power = ta;  // |theta|^{m+1} at m = 0
    for (std::size_t m = 0; m < inst.process.size(); ++m) {
        cert.xi.push_back(multiply(power, inv));
        power = multiply(power, ta);
    }
    return cert;
}

GeometricSum geometric_sum(const LatticeVector& theta, int terms) {
    if (terms < 0) {
        throw ValidationError("geometric_sum needs a nonnegative term count");
    }
    if (min_component(theta) < 0.0) {
        throw NotContractive("geometric_sum needs a nonnegative coefficient");
    }
    require_contractive(theta, false);

    const SpacePtr& space = theta.space();
    GeometricSum out{LatticeVector::zero(space), LatticeVector::unit(space)};
    LatticeVector power = LatticeVector::unit(space);
    for (int i = 0; i <= terms; ++i) {
        out.partial += power;
        power = multiply(power, theta);
    }
    for (std::size_t i = 0; i < space->size(); ++i) {
        out.closed_form[i] = 1.0 / (1.0 - theta[i]);
    }
    return out;
}

int power_decay_check(const LatticeVector& theta, double tolerance) {
    if (tolerance <= 0.0) {
        throw ValidationError("tolerance must be positive");
    }
    if (min_component(theta) < 0.0) {
        throw NotContractive("power_decay_check needs a nonnegative coefficient");
    }
    require_contractive(theta, false);

    LatticeVector power = theta;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 1;; ++m) {
        double mx = max_component(power);
        if (mx > prev + 1e-15) {
            throw VerificationFailed("powers of a contractive coefficient must decrease");
        }
        prev = mx;
        if (mx <= tolerance) {
            return m;
        }
        power = multiply(power, theta);
    }
}

Report verify_projection_optimality(const LatticeVector& f, const CondExpOperator& S,
                                    const CondExpOperator& T, int trials, Rng& rng) {
    if (!is_compatible(S, T)) {
        throw IncompatibleOperators("verify_projection_optimality needs S compatible with T");
    }
    SlackTracker acc;
    LatticeVector sf = S.apply(f);
    LatticeVector best = T.apply(multiply(f - sf, f - sf));

    for (int t = 0; t < trials; ++t) {
        std::vector<double> vals(S.space()->size());
        for (const auto& block : S.partition().blocks()) {
            double v = rng.uniform(-2.0, 2.0);
            for (std::size_t atom : block) {
                vals[atom] = v;
            }
        }
        LatticeVector g(S.space(), std::move(vals));
        LatticeVector total = T.apply(multiply(f - g, f - g));
        acc.take(best, total);
        // Pythagorean split: the cross term vanishes
        LatticeVector split = best + T.apply(multiply(sf - g, sf - g));
        acc.take_equality(total, split);
    }
    // the minimiser itself attains the bound with equality
    acc.take_equality(best, T.apply(multiply(f - sf, f - sf)));
    return acc.report("projection_optimality", trials);
}

Report verify_averaging_pull(const CondExpOperator& U, const CondExpOperator& V,
                             const LatticeVector& g, const LatticeVector& h) {
    if (!is_compatible(U, V)) {
        throw OperatorsNotNested("verify_averaging_pull needs V's range inside U's range");
    }
    SlackTracker acc;
    LatticeVector vh = V.apply(h);
    acc.take_equality(U.apply(multiply(g, vh)), multiply(vh, U.apply(g)));
    return acc.report("averaging_pull", 1);
}

}  // namespace riesz
