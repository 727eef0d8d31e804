#include "riesz/norms.hpp"

#include <algorithm>
#include <cmath>

#include "riesz/detail/slack.hpp"

namespace riesz {

const char* lp_name(Lp p) {
    switch (p) {
        case Lp::one:
            return "1";
        case Lp::two:
            return "2";
        case Lp::inf:
            return "inf";
    }
    return "?";
}

ConditionalNormValue norm(const LatticeVector& f, const CondExpOperator& T, Lp p) {
    detail::require_same_space(f.space(), T.space(), "conditional norm");
    switch (p) {
        case Lp::one:
            return {T.apply(abs(f)), p};
        case Lp::two:
            return {sqrt_exact(T.apply(multiply(f, f))), p};
        case Lp::inf: {
            std::vector<double> out(f.size());
            for (const auto& block : T.partition().blocks()) {
                double m = 0.0;
                for (std::size_t atom : block) {
                    m = std::max(m, std::fabs(f[atom]));
                }
                for (std::size_t atom : block) {
                    out[atom] = m;
                }
            }
            return {LatticeVector(f.space(), std::move(out)), p};
        }
    }
    throw Error("unreachable norm exponent");
}

namespace {

using detail::SlackTracker;

LatticeVector random_vector(const SpacePtr& space, Rng& rng, double lo = -2.0, double hi = 2.0) {
    std::vector<double> vals(space->size());
    for (double& v : vals) {
        v = rng.uniform(lo, hi);
    }
    return LatticeVector(space, std::move(vals));
}

LatticeVector random_block_constant(const CondExpOperator& T, Rng& rng, double lo = -2.0,
                                    double hi = 2.0) {
    std::vector<double> vals(T.space()->size());
    for (const auto& block : T.partition().blocks()) {
        double v = rng.uniform(lo, hi);
        for (std::size_t atom : block) {
            vals[atom] = v;
        }
    }
    return LatticeVector(T.space(), std::move(vals));
}

}  // namespace

std::vector<Report> verify_norm_axioms(const CondExpOperator& T, int trials, Rng& rng) {
    if (trials < 1) {
        throw ValidationError("verify_norm_axioms needs at least one trial");
    }
    const SpacePtr& space = T.space();
    const Lp exponents[] = {Lp::one, Lp::two, Lp::inf};

    std::vector<Report> out;
    for (Lp p : exponents) {
        SlackTracker definiteness;
        SlackTracker homogeneity;
        SlackTracker triangle;

        // definiteness at zero is exact
        LatticeVector z = LatticeVector::zero(space);
        definiteness.take_equality(norm(z, T, p).value, z);

        for (int t = 0; t < trials; ++t) {
            LatticeVector f = random_vector(space, rng);
            LatticeVector g = random_vector(space, rng);
            LatticeVector r = random_block_constant(T, rng);

            // ||f|| = 0 only for f = 0; strict positivity of T makes the
            // norm of any nonzero vector strictly positive
            if (max_abs(f) > 1e-9 && max_component(norm(f, T, p).value) <= 0.0) {
                definiteness.pass = false;
            }

            homogeneity.take_equality(norm(multiply(r, g), T, p).value,
                                      multiply(abs(r), norm(g, T, p).value));
            triangle.take(norm(f + g, T, p).value, norm(f, T, p).value + norm(g, T, p).value);
        }
        std::string suffix = std::string(".p") + lp_name(p);
        out.push_back(definiteness.report("norm_axiom.definiteness" + suffix, trials));
        out.push_back(homogeneity.report("norm_axiom.homogeneity" + suffix, trials));
        out.push_back(triangle.report("norm_axiom.triangle" + suffix, trials));
    }
    return out;
}

Report verify_holder(const LatticeVector& f, const LatticeVector& g, const CondExpOperator& T,
                     HolderMode mode) {
    detail::require_same_space(f.space(), g.space(), "Holder inequality");
    SlackTracker acc;
    LatticeVector lhs = norm(multiply(f, g), T, Lp::one).value;
    LatticeVector rhs = mode == HolderMode::one_inf
                            ? multiply(norm(f, T, Lp::one).value, norm(g, T, Lp::inf).value)
                            : multiply(norm(f, T, Lp::two).value, norm(g, T, Lp::two).value);
    acc.take(lhs, rhs);
    return acc.report(mode == HolderMode::one_inf ? "holder.1_inf" : "holder.2_2", 1);
}

Report verify_lyapunov(const LatticeVector& f, const CondExpOperator& T) {
    SlackTracker acc;
    LatticeVector n1 = norm(f, T, Lp::one).value;
    LatticeVector n2 = norm(f, T, Lp::two).value;
    LatticeVector ni = norm(f, T, Lp::inf).value;
    acc.take(n1, n2);
    acc.take(n2, ni);
    return acc.report("lyapunov", 1);
}

Report verify_jensen(const CondExpOperator& S, const CondExpOperator& T, const LatticeVector& f,
                     Lp p) {
    if (!is_compatible(S, T)) {
        throw IncompatibleOperators("verify_jensen requires S compatible with T");
    }
    SlackTracker acc;
    acc.take(norm(S.apply(f), T, p).value, norm(f, T, p).value);
    return acc.report(std::string("jensen.p") + lp_name(p), 1);
}

}  // namespace riesz
