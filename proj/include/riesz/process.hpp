#pragma once

#include <optional>
#include <vector>

#include "riesz/lattice.hpp"
#include "riesz/norms.hpp"
#include "riesz/report.hpp"

namespace riesz {

/// A finite stretch of a process: vectors indexed start .. start+size-1,
/// all on one space.
class ProcessWindow {
   public:
    ProcessWindow(int start, std::vector<LatticeVector> vectors);

    int start() const { return start_; }
    int end() const { return start_ + int(vectors_.size()) - 1; }
    std::size_t size() const { return vectors_.size(); }
    bool contains(int n) const { return n >= start() && n <= end(); }
    const SpacePtr& space() const { return vectors_.front().space(); }

    const LatticeVector& at(int n) const;
    const std::vector<LatticeVector>& vectors() const { return vectors_; }

   private:
    int start_;
    std::vector<LatticeVector> vectors_;
};

ProcessWindow add_windows(const ProcessWindow& f, const ProcessWindow& g);
ProcessWindow multiply_windows(const ProcessWindow& f, const ProcessWindow& g);
/// The window of n -> f_{n+shift}, indexed start .. end-shift.
ProcessWindow shift_window(const ProcessWindow& f, int shift);

/// Two-parameter family of conditional expectation operators T_i^j over a
/// finite index window, nested so that widening [i, j] refines the
/// partition. Index pairs outside the window clamp to it; an empty
/// clamped interval yields the base operator.
class FamilyOperators {
   public:
    FamilyOperators(CondExpOperator base, int start, std::vector<CondExpOperator> grid);

    const CondExpOperator& base() const { return base_; }
    const SpacePtr& space() const { return base_.space(); }
    int start() const { return start_; }
    int end() const { return start_ + count_ - 1; }

    /// T_i^j with clamping.
    const CondExpOperator& member(int i, int j) const;
    /// Backward tail: the join of levels start .. n.
    const CondExpOperator& backward_tail(int n) const { return member(start(), n); }
    /// Forward tail: the join of levels n .. end.
    const CondExpOperator& forward_tail(int n) const { return member(n, end()); }

   private:
    std::size_t grid_index(int i, int j) const;
    CondExpOperator base_;
    int start_;
    int count_;
    std::vector<CondExpOperator> grid_;
};

/// Builds T_i^j as the conditional expectation onto the join of T's
/// partition with the level sets of the noise coordinates i..j. This is
/// the operator family generated by the explanatory process.
FamilyOperators generated_family(const ProcessWindow& noise, const CondExpOperator& T);

/// Certificate that a process is near-epoch dependent: per-index scales d_n
/// and per-gap decay factors xi_m (block-constant) so that
/// ||f_n - T_{n-m}^{n+m} f_n||_{T,p} <= d_n xi_m on the whole grid.
struct NedCertificate {
    Lp p;
    int start = 0;                  ///< index of d.front()
    std::vector<LatticeVector> d;   ///< one per process index
    std::vector<LatticeVector> xi;  ///< xi[m] for gaps m = 0, 1, ...
};

/// Certificate that a process is a mixingale along a filtration: scales c_n
/// and a non-increasing sequence phi_m bounding both the backward
/// projection and the forward approximation error.
struct MixingaleCertificate {
    Lp p;
    int start = 0;
    std::vector<LatticeVector> c;
    std::vector<LatticeVector> phi;  ///< phi[m] for m = 0, 1, ...
};

/// Default threshold on the final decay factor when certifying xi -> 0 on
/// a finite window.
inline constexpr double kDecayTol = 1e-2;

/// ||f_n - T_{n-m}^{n+m} f_n||_{T,p}, with the window edges clamped.
ConditionalNormValue ned_defect(const ProcessWindow& f, const FamilyOperators& family, int n,
                                int m, Lp p);

struct NedCheck {
    Report bound;  ///< defect(n,m) <= d_n xi_m over the full grid
    Report decay;  ///< xi running-min non-increasing and small at the last gap
    bool pass() const { return bound.pass && decay.pass; }
};

NedCheck verify_ned(const ProcessWindow& f, const FamilyOperators& family,
                    const NedCertificate& cert, double decay_tol = kDecayTol);

/// One row of an exported defect grid.
struct DefectRow {
    int n;
    int m;
    std::size_t block;
    double defect;
    double bound;
    double slack;
};

std::vector<DefectRow> ned_defect_grid(const ProcessWindow& f, const FamilyOperators& family,
                                       const NedCertificate& cert);

/// Certificate for the sum process: d = d^f v d^g, xi = xi^f + xi^g. With
/// different exponents the result holds at the smaller of the two.
NedCertificate ned_sum_certificate(const NedCertificate& certF, const NedCertificate& certG);

/// Auxiliary data for the product constructions.
struct ProductBounds {
    /// ||f_n||_{T,p} per index (p = certF.p).
    std::vector<LatticeVector> norm_f;
    /// ||g_n||_{T,2} per index; required by the (2,2) mode.
    std::vector<LatticeVector> norm_g;
    /// Block-constant upper bound for d^g per index; required by the
    /// (p,inf) mode.
    std::vector<LatticeVector> r_g;
    /// Block-constant upper bound for |g_n| per index; required by the
    /// (p,inf) mode.
    std::vector<LatticeVector> h;
};

/// Certificate for the product process f*g. With certG in the inf norm the
/// result keeps certF's exponent; with both certificates in the 2-norm the
/// result is a 1-norm certificate.
NedCertificate ned_product_certificate(const NedCertificate& certF, const NedCertificate& certG,
                                       const ProductBounds& bounds);

/// Certificate for the shifted process n -> f_{n+shift} over the same
/// operator family.
NedCertificate ned_shift_certificate(const NedCertificate& cert, int shift);

/// ||f - Vf||_{T,p} <= 2 ||f - Uf||_{T,p} whenever the range of U sits
/// inside the range of V.
Report verify_two_sided_projection_bound(const LatticeVector& f, const CondExpOperator& U,
                                         const CondExpOperator& V, const CondExpOperator& T,
                                         Lp p);

/// Filtration realised on a window: operator at index j clamps to the ends,
/// with everything below `start` collapsing to the first entry.
struct FiltrationWindow {
    int start = 0;
    std::vector<CondExpOperator> ops;

    const CondExpOperator& at(int j) const;
};

/// The filtration of backward tails (base operator below the window start).
FiltrationWindow backward_filtration(const FamilyOperators& family);

struct MixingaleCheck {
    Report cond_past;        ///< ||T_{n-m} f_n||_{T,p} <= c_n phi_m
    Report cond_future;      ///< ||f_n - T_{n+m} f_n||_{T,p} <= c_n phi_{m+1}
    Report cond_future_alt;  ///< same left side against c_n phi_{m+2}, reported only
    bool pass() const { return cond_past.pass && cond_future.pass; }
};

MixingaleCheck verify_mixingale(const ProcessWindow& f, const CondExpOperator& T,
                                const FiltrationWindow& filtration,
                                const MixingaleCertificate& cert);

/// Converts a NED certificate over a mixing family into a mixingale
/// certificate for the backward-tail filtration:
/// c_n = d_n v ||f_n||_{T,inf}, phi_m = 2(xi_k + min{2 alpha_k, phi_k})
/// with k = floor(m/2), normalised to be non-increasing. The process must
/// have conditional mean zero under the base operator. The result is
/// verified against both mixingale conditions before it is returned.
MixingaleCertificate mixingale_from_ned(const ProcessWindow& f, const FamilyOperators& family,
                                        const NedCertificate& cert, std::size_t cap);

/// Truncated-tail profile max_n T(1_{|f_n| > c} |f_n|) for each cutoff c;
/// decaying to zero as c grows is the uniform-integrability analogue.
std::vector<LatticeVector> t_uniform_profile(const ProcessWindow& f, const CondExpOperator& T,
                                             const std::vector<double>& c_grid);

/// T |(1/m) sum_{i=n+1}^{n+m} f_i|.
ConditionalNormValue cesaro_norm(const ProcessWindow& f, const CondExpOperator& T, int n, int m);

struct LlnCheck {
    std::vector<double> values;  ///< max component of the Cesaro norm per schedule step
    bool decreasing = false;
    double geo_mean_ratio = 0.0;
    double final_value = 0.0;
    bool pass = false;
    Report report() const;
};

/// Desk-scale surrogate for the law of large numbers: the Cesaro norms over
/// the given schedule of averaging lengths must decrease at every step,
/// decay at the given geometric-mean rate, and end below final_bound.
LlnCheck lln_check(const ProcessWindow& f, const CondExpOperator& T,
                   const std::vector<int>& schedule, double ratio_bound, double final_bound);

}  // namespace riesz
