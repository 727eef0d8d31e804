#include "riesz/mixing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "riesz/detail/slack.hpp"
#include "riesz/process.hpp"

namespace riesz {

namespace {

// hard ceilings independent of the caller's cap: materialised projection
// lists and subset walks stop being desk-scale well before these
constexpr std::size_t kEnumerationCeiling = 20;
constexpr std::size_t kWalkCeiling = 30;

}  // namespace

std::vector<BandProjection> enumerate_band_projections(const CondExpOperator& S, std::size_t cap) {
    const std::size_t b = S.block_count();
    const std::size_t effective = std::min(cap, kEnumerationCeiling);
    if (b > effective) {
        throw CapExceeded(b, effective);
    }
    const auto& blocks = S.partition().blocks();
    std::vector<BandProjection> out;
    out.reserve(std::size_t(1) << b);
    for (std::size_t mask = 0; mask < (std::size_t(1) << b); ++mask) {
        std::vector<std::uint8_t> ind(S.space()->size(), 0);
        for (std::size_t i = 0; i < b; ++i) {
            if (mask & (std::size_t(1) << i)) {
                for (std::size_t atom : blocks[i]) {
                    ind[atom] = 1;
                }
            }
        }
        out.emplace_back(S.space(), std::move(ind));
    }
    return out;
}

namespace {

void check_mixing_preconditions(const CondExpOperator& U, const CondExpOperator& V,
                                const CondExpOperator& T, std::size_t cap) {
    if (!is_compatible(U, T) || !is_compatible(V, T)) {
        throw IncompatibleOperators("mixing coefficients need U and V compatible with T");
    }
    const std::size_t effective = std::min(cap, kWalkCeiling);
    if (U.block_count() > effective) {
        throw CapExceeded(U.block_count(), effective);
    }
    if (V.block_count() > effective) {
        throw CapExceeded(V.block_count(), effective);
    }
}

/// Intersection-mass tables of the U- and V-blocks inside one T-block.
/// Because band projections in B(U) are unions of U-blocks and the
/// conditioning operator averages each T-block separately, the blockwise
/// supremum over projection pairs only depends on these local masses.
struct LocalBlocks {
    std::vector<std::vector<double>> mass;  // mass[i][j] = w(U_i n V_j)
    std::vector<double> mass_u;
    std::vector<double> mass_v;
    double total = 0.0;
};

LocalBlocks local_blocks(const CondExpOperator& U, const CondExpOperator& V,
                         const std::vector<std::size_t>& t_block, const SampleSpace& space) {
    LocalBlocks lb;
    std::vector<std::size_t> u_ids;
    std::vector<std::size_t> v_ids;
    std::vector<int> u_local(U.block_count(), -1);
    std::vector<int> v_local(V.block_count(), -1);
    for (std::size_t atom : t_block) {
        std::size_t ub = U.partition().block_of(atom);
        std::size_t vb = V.partition().block_of(atom);
        if (u_local[ub] < 0) {
            u_local[ub] = int(u_ids.size());
            u_ids.push_back(ub);
        }
        if (v_local[vb] < 0) {
            v_local[vb] = int(v_ids.size());
            v_ids.push_back(vb);
        }
    }
    lb.mass.assign(u_ids.size(), std::vector<double>(v_ids.size(), 0.0));
    lb.mass_u.assign(u_ids.size(), 0.0);
    lb.mass_v.assign(v_ids.size(), 0.0);
    for (std::size_t atom : t_block) {
        double w = space.weight(atom);
        int i = u_local[U.partition().block_of(atom)];
        int j = v_local[V.partition().block_of(atom)];
        lb.mass[i][j] += w;
        lb.mass_u[i] += w;
        lb.mass_v[j] += w;
        lb.total += w;
    }
    return lb;
}

/// Lowest set bit; identifies the element toggled between consecutive
/// Gray codes.
inline unsigned toggled_bit(std::size_t t) {
    return unsigned(std::countr_zero(t));
}

double alpha_on_block(const LocalBlocks& lb) {
    const std::size_t u = lb.mass_u.size();
    const std::size_t v = lb.mass_v.size();
    const double wB = lb.total;
    double best = 0.0;

    std::vector<double> s(u, 0.0);  // s[i] = w(U_i n Q)
    std::vector<std::uint8_t> in_q(v, 0);
    double mQ = 0.0;
    for (std::size_t qt = 0; qt < (std::size_t(1) << v); ++qt) {
        if (qt > 0) {
            unsigned j = toggled_bit(qt);
            double sign = in_q[j] ? -1.0 : 1.0;
            in_q[j] ^= 1;
            mQ += sign * lb.mass_v[j];
            for (std::size_t i = 0; i < u; ++i) {
                s[i] += sign * lb.mass[i][j];
            }
        }
        // walk P subsets; w(P n Q) accumulates from the per-U-block sums
        std::vector<std::uint8_t> in_p(u, 0);
        double mP = 0.0;
        double mPQ = 0.0;
        for (std::size_t pt = 0; pt < (std::size_t(1) << u); ++pt) {
            if (pt > 0) {
                unsigned i = toggled_bit(pt);
                double sign = in_p[i] ? -1.0 : 1.0;
                in_p[i] ^= 1;
                mP += sign * lb.mass_u[i];
                mPQ += sign * s[i];
            }
            double cand = std::fabs(mPQ / wB - (mP / wB) * (mQ / wB));
            best = std::max(best, cand);
        }
    }
    return best;
}

double phi_on_block(const LocalBlocks& lb) {
    const std::size_t u = lb.mass_u.size();
    const std::size_t v = lb.mass_v.size();
    const double wB = lb.total;
    double best = 0.0;

    std::vector<double> s(u, 0.0);
    std::vector<std::uint8_t> in_q(v, 0);
    double mQ = 0.0;
    for (std::size_t qt = 0; qt < (std::size_t(1) << v); ++qt) {
        if (qt > 0) {
            unsigned j = toggled_bit(qt);
            double sign = in_q[j] ? -1.0 : 1.0;
            in_q[j] ^= 1;
            mQ += sign * lb.mass_v[j];
            for (std::size_t i = 0; i < u; ++i) {
                s[i] += sign * lb.mass[i][j];
            }
        }
        // U(Qe) is constant on each U-block, so the blockwise sup of
        // |U(Qe) - T(Qe)| is a max over U-blocks
        double tq = mQ / wB;
        for (std::size_t i = 0; i < u; ++i) {
            best = std::max(best, std::fabs(s[i] / lb.mass_u[i] - tq));
        }
    }
    return best;
}

LatticeVector coefficient_vector(const CondExpOperator& U, const CondExpOperator& V,
                                 const CondExpOperator& T, bool strong) {
    std::vector<double> out(T.space()->size(), 0.0);
    for (const auto& t_block : T.partition().blocks()) {
        LocalBlocks lb = local_blocks(U, V, t_block, *T.space());
        double value = strong ? alpha_on_block(lb) : phi_on_block(lb);
        for (std::size_t atom : t_block) {
            out[atom] = value;
        }
    }
    return LatticeVector(T.space(), std::move(out));
}

using detail::SlackTracker;

}  // namespace

MixingCoefficient alpha_coefficient(const CondExpOperator& U, const CondExpOperator& V,
                                    const CondExpOperator& T, std::size_t cap) {
    check_mixing_preconditions(U, V, T, cap);
    return {MixKind::alpha, coefficient_vector(U, V, T, true)};
}

MixingCoefficient phi_coefficient(const CondExpOperator& U, const CondExpOperator& V,
                                  const CondExpOperator& T, std::size_t cap) {
    check_mixing_preconditions(U, V, T, cap);
    return {MixKind::phi, coefficient_vector(U, V, T, false)};
}

Report verify_strong_mixing_inequality(const CondExpOperator& U, const CondExpOperator& V,
                                       const CondExpOperator& T, const LatticeVector& f,
                                       std::size_t cap) {
    if (!V.in_range(f, ineq_tolerance(max_abs(f)))) {
        throw NotInRangeOfV("strong mixing inequality needs f constant on V's blocks");
    }
    MixingCoefficient a = alpha_coefficient(U, V, T, cap);
    LatticeVector lhs = norm(U.apply(f) - T.apply(f), T, Lp::one).value;
    LatticeVector rhs = 4.0 * multiply(a.value, norm(f, T, Lp::inf).value);
    SlackTracker acc;
    acc.take(lhs, rhs);
    Report r;
    r.property = "mixing_inequality.alpha";
    r.trials = 1;
    r.worst_slack = acc.worst;
    r.pass = acc.pass;
    return r;
}

Report verify_uniform_mixing_inequality(const CondExpOperator& U, const CondExpOperator& V,
                                        const CondExpOperator& T, const LatticeVector& f,
                                        std::size_t cap) {
    if (!V.in_range(f, ineq_tolerance(max_abs(f)))) {
        throw NotInRangeOfV("uniform mixing inequality needs f constant on V's blocks");
    }
    MixingCoefficient p = phi_coefficient(U, V, T, cap);
    LatticeVector diff = U.apply(f) - T.apply(f);
    LatticeVector lhs1 = norm(diff, T, Lp::one).value;
    LatticeVector mid = norm(diff, T, Lp::inf).value;
    LatticeVector rhs = 2.0 * multiply(p.value, norm(f, T, Lp::inf).value);
    SlackTracker acc;
    acc.take(lhs1, mid);
    acc.take(mid, rhs);
    Report r;
    r.property = "mixing_inequality.phi";
    r.trials = 1;
    r.worst_slack = acc.worst;
    r.pass = acc.pass;
    return r;
}

namespace {

MixingCoefficient sequence_coefficient(const FamilyOperators& family, int m, std::size_t cap,
                                       bool strong) {
    if (m < 0 || m > family.end() - family.start()) {
        throw WindowTooSmall("sequence coefficient gap must fit inside the family window");
    }
    const CondExpOperator& T = family.base();
    LatticeVector best = LatticeVector::zero(T.space());
    for (int n = family.start(); n <= family.end(); ++n) {
        const CondExpOperator& U = family.backward_tail(n);
        const CondExpOperator& V = family.member(n + m, family.end());
        MixingCoefficient c =
            strong ? alpha_coefficient(U, V, T, cap) : phi_coefficient(U, V, T, cap);
        best = sup(best, c.value);
    }
    return {strong ? MixKind::alpha : MixKind::phi, best};
}

}  // namespace

MixingCoefficient sequence_alpha(const FamilyOperators& family, int m, std::size_t cap) {
    return sequence_coefficient(family, m, cap, true);
}

MixingCoefficient sequence_phi(const FamilyOperators& family, int m, std::size_t cap) {
    return sequence_coefficient(family, m, cap, false);
}

}  // namespace riesz
