#pragma once

#include "riesz/lattice.hpp"
#include "riesz/norms.hpp"
#include "riesz/process.hpp"
#include "riesz/report.hpp"
#include "riesz/rng.hpp"

namespace riesz {

/// First-order autoregression f_n = theta * f_{n-1} + eps_n driven by
/// centered noise, with the contraction coefficient theta constant on the
/// conditioning blocks. The process starts from zero one step before the
/// noise window.
struct Ar1Instance {
    LatticeVector theta;
    ProcessWindow noise;
    ProcessWindow process;
    /// Componentwise maximum of ||eps_n||_{T,2} over the window.
    LatticeVector g_bound;
};

/// Subtracts the blockwise mean: eps_n = raw_n - T raw_n.
ProcessWindow center_noise(const ProcessWindow& raw, const CondExpOperator& T);

/// Uniform noise in [-scale, scale] per atom per step, then centered.
ProcessWindow random_centered_noise(const CondExpOperator& T, int start, int steps, double scale,
                                    Rng& rng);

/// Two-valued noise (+scale or -scale per atom), then centered. Its level
/// sets stay coarse, so the operator family it generates grows gradually
/// instead of collapsing to the discrete partition in one step.
ProcessWindow random_sign_noise(const CondExpOperator& T, int start, int steps, double scale,
                                Rng& rng);

/// Runs the recursion from zero and cross-checks it against the explicit
/// geometric expansion of the history.
Ar1Instance generate_ar1(const LatticeVector& theta, const ProcessWindow& noise,
                         const CondExpOperator& T);

/// The closed-form 2-norm certificate: d_n = g, xi_m = |theta|^{m+1} / (e - |theta|).
NedCertificate ar1_ned_certificate(const Ar1Instance& inst);

struct GeometricSum {
    LatticeVector partial;
    LatticeVector closed_form;
};

/// Partial sum of theta^i against e / (e - theta); the gap is exactly
/// theta^{terms+1} / (e - theta).
GeometricSum geometric_sum(const LatticeVector& theta, int terms);

/// Smallest m >= 1 with max component of theta^m below the tolerance.
int power_decay_check(const LatticeVector& theta, double tolerance);

/// T(f - Sf)^2 <= T(f - g)^2 for block-constant competitors g, together
/// with the exact Pythagorean split T(f-g)^2 = T(f-Sf)^2 + T(Sf-g)^2.
Report verify_projection_optimality(const LatticeVector& f, const CondExpOperator& S,
                                    const CondExpOperator& T, int trials, Rng& rng);

/// U(g * Vh) = Vh * Ug whenever V's range sits inside U's range.
Report verify_averaging_pull(const CondExpOperator& U, const CondExpOperator& V,
                             const LatticeVector& g, const LatticeVector& h);

}  // namespace riesz
