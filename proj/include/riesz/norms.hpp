#pragma once

#include "riesz/lattice.hpp"
#include "riesz/report.hpp"
#include "riesz/rng.hpp"

namespace riesz {

/// Exponent of a T-conditional norm.
enum class Lp { one, two, inf };

const char* lp_name(Lp p);

/// A conditional norm value: nonnegative and constant on the blocks of the
/// conditioning operator, so it acts as a "scalar" over that operator's
/// range.
struct ConditionalNormValue {
    LatticeVector value;
    Lp p;
};

/// T-conditional p-norm of f: T|f| for p=1, sqrt(T f^2) for p=2, and the
/// blockwise maximum of |f| for p=inf.
ConditionalNormValue norm(const LatticeVector& f, const CondExpOperator& T, Lp p);

/// Checks definiteness, homogeneity over block-constant factors, and the
/// triangle inequality on random data, for every p. One Report per axiom
/// and exponent.
std::vector<Report> verify_norm_axioms(const CondExpOperator& T, int trials, Rng& rng);

enum class HolderMode { one_inf, two_two };

/// ||f g||_{T,1} <= ||f||_{T,p} ||g||_{T,q} for (p,q) = (1,inf) or (2,2).
Report verify_holder(const LatticeVector& f, const LatticeVector& g, const CondExpOperator& T,
                     HolderMode mode);

/// ||f||_{T,1} <= ||f||_{T,2} <= ||f||_{T,inf}.
Report verify_lyapunov(const LatticeVector& f, const CondExpOperator& T);

/// Contraction of the conditional norm under a compatible conditional
/// expectation: ||Sf||_{T,p} <= ||f||_{T,p}.
Report verify_jensen(const CondExpOperator& S, const CondExpOperator& T, const LatticeVector& f,
                     Lp p);

}  // namespace riesz
