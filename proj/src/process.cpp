#include "riesz/process.hpp"

#include <algorithm>
#include <cmath>

#include "riesz/detail/slack.hpp"
#include "riesz/mixing.hpp"

namespace riesz {

using detail::SlackTracker;

ProcessWindow::ProcessWindow(int start, std::vector<LatticeVector> vectors)
    : start_(start), vectors_(std::move(vectors)) {
    if (vectors_.empty()) {
        throw ShapeMismatch("a process window needs at least one vector");
    }
    for (const auto& v : vectors_) {
        detail::require_same_space(v.space(), vectors_.front().space(), "process window");
    }
}

const LatticeVector& ProcessWindow::at(int n) const {
    if (!contains(n)) {
        throw IndexOutOfWindow("process index " + std::to_string(n) + " outside window [" +
                               std::to_string(start()) + ", " + std::to_string(end()) + "]");
    }
    return vectors_[std::size_t(n - start_)];
}

namespace {

void require_same_shape(const ProcessWindow& f, const ProcessWindow& g, const char* what) {
    if (f.start() != g.start() || f.size() != g.size()) {
        throw ShapeMismatch(std::string(what) + ": process windows are not aligned");
    }
}

}  // namespace

ProcessWindow add_windows(const ProcessWindow& f, const ProcessWindow& g) {
    require_same_shape(f, g, "add_windows");
    std::vector<LatticeVector> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out.push_back(f.vectors()[i] + g.vectors()[i]);
    }
    return ProcessWindow(f.start(), std::move(out));
}

ProcessWindow multiply_windows(const ProcessWindow& f, const ProcessWindow& g) {
    require_same_shape(f, g, "multiply_windows");
    std::vector<LatticeVector> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out.push_back(multiply(f.vectors()[i], g.vectors()[i]));
    }
    return ProcessWindow(f.start(), std::move(out));
}

ProcessWindow shift_window(const ProcessWindow& f, int shift) {
    if (shift < 0 || std::size_t(shift) >= f.size()) {
        throw WindowOverflow("shift exceeds the process window");
    }
    std::vector<LatticeVector> out(f.vectors().begin() + shift, f.vectors().end());
    return ProcessWindow(f.start(), std::move(out));
}

FamilyOperators::FamilyOperators(CondExpOperator base, int start, std::vector<CondExpOperator> grid)
    : base_(std::move(base)), start_(start), grid_(std::move(grid)) {
    // triangular storage: one operator per index pair start <= i <= j <= end
    std::size_t n = grid_.size();
    int count = 0;
    while (std::size_t(count) * (count + 1) / 2 < n) {
        ++count;
    }
    if (std::size_t(count) * (count + 1) / 2 != n || count == 0) {
        throw ShapeMismatch("family grid size is not triangular");
    }
    count_ = count;
    for (const auto& op : grid_) {
        detail::require_same_space(op.space(), base_.space(), "family operators");
        if (!op.partition().refines(base_.partition())) {
            throw IncompatibleOperators("family member is not compatible with the base operator");
        }
    }
    // nesting: widening the index interval refines the partition
    for (int i = start_; i <= end(); ++i) {
        for (int j = i; j <= end(); ++j) {
            const Partition& here = member(i, j).partition();
            if (j + 1 <= end() && !member(i, j + 1).partition().refines(here)) {
                throw IncompatibleOperators("family nesting fails between (i,j) and (i,j+1)");
            }
            if (i + 1 <= j && !here.refines(member(i + 1, j).partition())) {
                throw IncompatibleOperators("family nesting fails between (i,j) and (i+1,j)");
            }
        }
    }
}

std::size_t FamilyOperators::grid_index(int i, int j) const {
    std::size_t a = std::size_t(i - start_);
    std::size_t b = std::size_t(j - start_);
    // row-major upper triangle
    return a * std::size_t(count_) - a * (a - 1) / 2 + (b - a);
}

const CondExpOperator& FamilyOperators::member(int i, int j) const {
    int lo = std::max(i, start_);
    int hi = std::min(j, end());
    if (lo > hi) {
        return base_;
    }
    return grid_[grid_index(lo, hi)];
}

FamilyOperators generated_family(const ProcessWindow& noise, const CondExpOperator& T) {
    detail::require_same_space(noise.space(), T.space(), "generated_family");
    const int start = noise.start();
    const int count = int(noise.size());

    std::vector<Partition> levels;
    levels.reserve(noise.size());
    for (const auto& eps : noise.vectors()) {
        levels.push_back(Partition::level_sets(eps));
    }

    // partitions[i][j] built by joining one more level onto [i, j-1]
    std::vector<CondExpOperator> grid;
    grid.reserve(std::size_t(count) * (count + 1) / 2);
    for (int a = 0; a < count; ++a) {
        Partition acc = Partition::common_refinement(T.partition(), levels[std::size_t(a)]);
        grid.emplace_back(T.space(), acc);
        for (int b = a + 1; b < count; ++b) {
            acc = Partition::common_refinement(acc, levels[std::size_t(b)]);
            grid.emplace_back(T.space(), acc);
        }
    }
    return FamilyOperators(T, start, std::move(grid));
}

ConditionalNormValue ned_defect(const ProcessWindow& f, const FamilyOperators& family, int n,
                                int m, Lp p) {
    if (!f.contains(n)) {
        throw IndexOutOfWindow("ned_defect index n outside the process window");
    }
    if (m < 0) {
        throw ValidationError("ned_defect gap m must be nonnegative");
    }
    const CondExpOperator& op = family.member(n - m, n + m);
    const LatticeVector& fn = f.at(n);
    return norm(fn - op.apply(fn), family.base(), p);
}

namespace {

void validate_certificate_shape(const ProcessWindow& f, const NedCertificate& cert) {
    if (cert.start != f.start() || cert.d.size() != f.size()) {
        throw ShapeMismatch("certificate scales do not align with the process window");
    }
    if (cert.xi.empty()) {
        throw ShapeMismatch("certificate has no decay factors");
    }
}

}  // namespace

NedCheck verify_ned(const ProcessWindow& f, const FamilyOperators& family,
                    const NedCertificate& cert, double decay_tol) {
    validate_certificate_shape(f, cert);
    const CondExpOperator& T = family.base();
    for (const auto& dn : cert.d) {
        if (min_component(dn) < 0.0) {
            throw ValidationError("certificate scale d has a negative component");
        }
    }
    for (const auto& xm : cert.xi) {
        if (min_component(xm) < 0.0 || !T.in_range(xm, 1e-12 * (1.0 + max_abs(xm)))) {
            throw ValidationError("decay factors must be nonnegative and constant on T-blocks");
        }
    }

    SlackTracker acc;
    long long worst_n = f.start();
    long long worst_m = 0;
    double recorded = std::numeric_limits<double>::infinity();
    for (int n = f.start(); n <= f.end(); ++n) {
        const LatticeVector& dn = cert.d[std::size_t(n - f.start())];
        for (int m = 0; m + 1 <= int(cert.xi.size()); ++m) {
            LatticeVector lhs = ned_defect(f, family, n, m, cert.p).value;
            LatticeVector rhs = multiply(dn, cert.xi[std::size_t(m)]);
            acc.take(lhs, rhs);
            if (acc.worst < recorded) {
                recorded = acc.worst;
                worst_n = n;
                worst_m = m;
            }
        }
    }

    NedCheck check;
    check.bound = acc.report("ned.bound", (long long)f.size() * (long long)cert.xi.size());
    check.bound.n = worst_n;
    check.bound.m = worst_m;

    // decay of the factors over the window: small at the largest gap and
    // non-increasing after running-min normalisation
    double final_value = max_component(cert.xi.back());
    check.decay.property = "ned.xi_decay";
    check.decay.trials = (long long)cert.xi.size();
    check.decay.worst_slack = decay_tol - final_value;
    check.decay.pass = final_value <= decay_tol;
    bool monotone = true;
    for (std::size_t m = 1; m < cert.xi.size(); ++m) {
        if (!leq(cert.xi[m], cert.xi[m - 1], 1e-12)) {
            monotone = false;
        }
    }
    if (!monotone) {
        check.decay.note = "raw decay factors are not monotone; running-min envelope used";
    }
    return check;
}

std::vector<DefectRow> ned_defect_grid(const ProcessWindow& f, const FamilyOperators& family,
                                       const NedCertificate& cert) {
    validate_certificate_shape(f, cert);
    std::vector<DefectRow> rows;
    const auto& blocks = family.base().partition().blocks();
    for (int n = f.start(); n <= f.end(); ++n) {
        const LatticeVector& dn = cert.d[std::size_t(n - f.start())];
        for (int m = 0; m + 1 <= int(cert.xi.size()); ++m) {
            LatticeVector defect = ned_defect(f, family, n, m, cert.p).value;
            LatticeVector bound = multiply(dn, cert.xi[std::size_t(m)]);
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                // the defect is constant on each block; report the tightest
                // bound over the block's atoms
                double worst_bound = std::numeric_limits<double>::infinity();
                for (std::size_t atom : blocks[b]) {
                    worst_bound = std::min(worst_bound, bound[atom]);
                }
                double d = defect[blocks[b].front()];
                rows.push_back({n, m, b, d, worst_bound, worst_bound - d});
            }
        }
    }
    return rows;
}

namespace {

int lp_rank(Lp p) {
    switch (p) {
        case Lp::one:
            return 1;
        case Lp::two:
            return 2;
        case Lp::inf:
            return 3;
    }
    return 0;
}

void require_same_certificate_shape(const NedCertificate& a, const NedCertificate& b) {
    if (a.start != b.start || a.d.size() != b.d.size() || a.xi.size() != b.xi.size()) {
        throw ShapeMismatch("certificates do not cover the same window");
    }
}

}  // namespace

NedCertificate ned_sum_certificate(const NedCertificate& certF, const NedCertificate& certG) {
    require_same_certificate_shape(certF, certG);
    NedCertificate out;
    out.p = lp_rank(certF.p) <= lp_rank(certG.p) ? certF.p : certG.p;
    out.start = certF.start;
    out.d.reserve(certF.d.size());
    for (std::size_t i = 0; i < certF.d.size(); ++i) {
        out.d.push_back(sup(certF.d[i], certG.d[i]));
    }
    out.xi.reserve(certF.xi.size());
    for (std::size_t m = 0; m < certF.xi.size(); ++m) {
        out.xi.push_back(certF.xi[m] + certG.xi[m]);
    }
    return out;
}

NedCertificate ned_product_certificate(const NedCertificate& certF, const NedCertificate& certG,
                                       const ProductBounds& bounds) {
    require_same_certificate_shape(certF, certG);
    const std::size_t count = certF.d.size();
    NedCertificate out;
    out.start = certF.start;

    if (certG.p == Lp::inf) {
        // bounded-factor mode: g comes with block-constant envelopes
        if (bounds.norm_f.size() != count || bounds.r_g.size() != count ||
            bounds.h.size() != count) {
            throw MissingBounds(
                "product certificate with an inf-norm factor needs norm_f, r_g and h");
        }
        out.p = certF.p;
        for (std::size_t i = 0; i < count; ++i) {
            LatticeVector dn = sup(multiply(bounds.r_g[i], bounds.norm_f[i]),
                                   sup(multiply(certF.d[i], bounds.h[i]),
                                       multiply(certF.d[i], bounds.r_g[i])));
            out.d.push_back(std::move(dn));
        }
    } else if (certF.p == Lp::two && certG.p == Lp::two) {
        // Cauchy-Schwarz mode: both factors in the 2-norm, result in the 1-norm
        if (bounds.norm_f.size() != count || bounds.norm_g.size() != count) {
            throw MissingBounds("product certificate in the (2,2) mode needs norm_f and norm_g");
        }
        out.p = Lp::one;
        for (std::size_t i = 0; i < count; ++i) {
            LatticeVector dn = sup(multiply(certG.d[i], bounds.norm_f[i]),
                                   sup(multiply(certF.d[i], bounds.norm_g[i]),
                                       multiply(certF.d[i], certG.d[i])));
            out.d.push_back(std::move(dn));
        }
    } else {
        throw MissingBounds("no product construction for this pair of norm exponents");
    }

    out.xi.reserve(certF.xi.size());
    for (std::size_t m = 0; m < certF.xi.size(); ++m) {
        out.xi.push_back(certF.xi[m] + certG.xi[m] + multiply(certF.xi[m], certG.xi[m]));
    }
    return out;
}

NedCertificate ned_shift_certificate(const NedCertificate& cert, int shift) {
    if (shift < 0) {
        throw WindowOverflow("shift must be nonnegative");
    }
    if (std::size_t(shift) >= cert.d.size()) {
        throw WindowOverflow("shift exceeds the certificate window");
    }
    NedCertificate out;
    out.p = cert.p;
    out.start = cert.start;
    for (std::size_t i = std::size_t(shift); i < cert.d.size(); ++i) {
        out.d.push_back(2.0 * cert.d[i]);
    }
    if (shift == 0) {
        out.xi = cert.xi;
        return out;
    }
    if (cert.xi.size() < 2) {
        throw WindowOverflow("shifted certificate needs at least two decay factors");
    }
    for (std::size_t k = 0; k < cert.xi.size(); ++k) {
        out.xi.push_back(k <= std::size_t(shift) ? cert.xi[1] : cert.xi[k - std::size_t(shift)]);
    }
    return out;
}

Report verify_two_sided_projection_bound(const LatticeVector& f, const CondExpOperator& U,
                                         const CondExpOperator& V, const CondExpOperator& T,
                                         Lp p) {
    if (!V.partition().refines(U.partition())) {
        throw RangeNotNested("the range of U must sit inside the range of V");
    }
    SlackTracker acc;
    LatticeVector lhs = norm(f - V.apply(f), T, p).value;
    LatticeVector rhs = 2.0 * norm(f - U.apply(f), T, p).value;
    acc.take(lhs, rhs);
    return acc.report(std::string("projection_bound.p") + lp_name(p), 1);
}

const CondExpOperator& FiltrationWindow::at(int j) const {
    if (ops.empty()) {
        throw NotAFiltration("empty filtration");
    }
    int idx = std::clamp(j - start, 0, int(ops.size()) - 1);
    return ops[std::size_t(idx)];
}

FiltrationWindow backward_filtration(const FamilyOperators& family) {
    FiltrationWindow filt;
    filt.start = family.start() - 1;
    filt.ops.push_back(family.base());
    for (int n = family.start(); n <= family.end(); ++n) {
        filt.ops.push_back(family.backward_tail(n));
    }
    return filt;
}

MixingaleCheck verify_mixingale(const ProcessWindow& f, const CondExpOperator& T,
                                const FiltrationWindow& filtration,
                                const MixingaleCertificate& cert) {
    for (std::size_t i = 0; i + 1 < filtration.ops.size(); ++i) {
        if (!filtration.ops[i + 1].partition().refines(filtration.ops[i].partition())) {
            throw NotAFiltration("filtration operators are not increasing");
        }
    }
    if (cert.start != f.start() || cert.c.size() != f.size()) {
        throw ShapeMismatch("mixingale scales do not align with the process window");
    }
    if (cert.phi.size() < 2) {
        throw ShapeMismatch("mixingale certificate needs at least two decay values");
    }

    SlackTracker past;
    SlackTracker future;
    SlackTracker future_alt;
    long long past_n = f.start(), past_m = 0;
    long long fut_n = f.start(), fut_m = 0;
    double past_rec = std::numeric_limits<double>::infinity();
    double fut_rec = std::numeric_limits<double>::infinity();

    for (int n = f.start(); n <= f.end(); ++n) {
        const LatticeVector& fn = f.at(n);
        const LatticeVector& cn = cert.c[std::size_t(n - f.start())];
        for (std::size_t m = 0; m < cert.phi.size(); ++m) {
            LatticeVector lhs = norm(filtration.at(n - int(m)).apply(fn), T, cert.p).value;
            past.take(lhs, multiply(cn, cert.phi[m]));
            if (past.worst < past_rec) {
                past_rec = past.worst;
                past_n = n;
                past_m = (long long)m;
            }
        }
        for (std::size_t m = 0; m + 1 < cert.phi.size(); ++m) {
            LatticeVector lhs =
                norm(fn - filtration.at(n + int(m)).apply(fn), T, cert.p).value;
            future.take(lhs, multiply(cn, cert.phi[m + 1]));
            if (future.worst < fut_rec) {
                fut_rec = future.worst;
                fut_n = n;
                fut_m = (long long)m;
            }
            if (m + 2 < cert.phi.size()) {
                future_alt.take(lhs, multiply(cn, cert.phi[m + 2]));
            }
        }
    }

    MixingaleCheck check;
    check.cond_past = past.report("mixingale.past_projection", (long long)cert.phi.size());
    check.cond_past.n = past_n;
    check.cond_past.m = past_m;
    check.cond_future = future.report("mixingale.future_approximation", (long long)cert.phi.size());
    check.cond_future.n = fut_n;
    check.cond_future.m = fut_m;
    check.cond_future_alt =
        future_alt.report("mixingale.future_approximation_strict", (long long)cert.phi.size());
    check.cond_future_alt.note = "informational variant against the next decay value";
    return check;
}

MixingaleCertificate mixingale_from_ned(const ProcessWindow& f, const FamilyOperators& family,
                                        const NedCertificate& cert, std::size_t cap) {
    validate_certificate_shape(f, cert);
    const CondExpOperator& T = family.base();
    for (int n = f.start(); n <= f.end(); ++n) {
        const LatticeVector& fn = f.at(n);
        if (max_abs(T.apply(fn)) > 1e-9 * (1.0 + max_abs(fn))) {
            throw NonZeroConditionalMean("process must have conditional mean zero under T");
        }
    }
    const int grid_max = int(cert.xi.size()) - 1;
    if (grid_max < 2) {
        throw WindowTooSmall("mixingale construction needs at least three decay factors");
    }

    // the decay value at gap m draws on the certificate and the sequence
    // mixing coefficients at half the gap
    const int k_max = (grid_max + 2) / 2;
    std::vector<LatticeVector> alpha_k;
    std::vector<LatticeVector> phi_k;
    alpha_k.reserve(std::size_t(k_max) + 1);
    phi_k.reserve(std::size_t(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        alpha_k.push_back(sequence_alpha(family, k, cap).value);
        phi_k.push_back(sequence_phi(family, k, cap).value);
    }

    MixingaleCertificate out;
    out.p = Lp::one;
    out.start = cert.start;
    for (int n = f.start(); n <= f.end(); ++n) {
        out.c.push_back(
            sup(cert.d[std::size_t(n - f.start())], norm(f.at(n), T, Lp::inf).value));
    }
    for (int m = 0; m <= grid_max + 2; ++m) {
        std::size_t k = std::size_t(m / 2);
        LatticeVector mix = inf(2.0 * alpha_k[k], phi_k[k]);
        out.phi.push_back(2.0 * (cert.xi[k] + mix));
    }
    for (std::size_t m = 1; m < out.phi.size(); ++m) {
        out.phi[m] = inf(out.phi[m], out.phi[m - 1]);
    }

    MixingaleCheck check = verify_mixingale(f, T, backward_filtration(family), out);
    if (!check.pass()) {
        throw VerificationFailed(
            "constructed mixingale certificate failed its own check at n=" +
            std::to_string(check.cond_past.pass ? *check.cond_future.n : *check.cond_past.n) +
            ", m=" +
            std::to_string(check.cond_past.pass ? *check.cond_future.m : *check.cond_past.m));
    }
    return out;
}

std::vector<LatticeVector> t_uniform_profile(const ProcessWindow& f, const CondExpOperator& T,
                                             const std::vector<double>& c_grid) {
    for (std::size_t i = 0; i < c_grid.size(); ++i) {
        if (c_grid[i] <= 0.0 || (i > 0 && c_grid[i] <= c_grid[i - 1])) {
            throw ValidationError("cutoff grid must be positive and increasing");
        }
    }
    const LatticeVector e = LatticeVector::unit(f.space());
    std::vector<LatticeVector> profile;
    profile.reserve(c_grid.size());
    for (double c : c_grid) {
        LatticeVector best = LatticeVector::zero(f.space());
        for (const auto& fn : f.vectors()) {
            LatticeVector af = abs(fn);
            BandProjection tail = positive_part_projection(af - c * e);
            best = sup(best, T.apply(tail.apply(af)));
        }
        profile.push_back(std::move(best));
    }
    return profile;
}

ConditionalNormValue cesaro_norm(const ProcessWindow& f, const CondExpOperator& T, int n, int m) {
    if (m < 1 || n + 1 < f.start() || n + m > f.end()) {
        throw WindowOverflow("Cesaro average indices leave the process window");
    }
    LatticeVector acc = LatticeVector::zero(f.space());
    for (int i = n + 1; i <= n + m; ++i) {
        acc += f.at(i);
    }
    acc *= 1.0 / double(m);
    return {T.apply(abs(acc)), Lp::one};
}

Report LlnCheck::report() const {
    Report r;
    r.property = "lln.decay";
    r.trials = (long long)values.size();
    r.worst_slack = values.empty() ? 0.0 : -final_value;
    r.pass = pass;
    return r;
}

LlnCheck lln_check(const ProcessWindow& f, const CondExpOperator& T,
                   const std::vector<int>& schedule, double ratio_bound, double final_bound) {
    if (schedule.empty()) {
        throw ValidationError("empty averaging schedule");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 1 || (i > 0 && schedule[i] <= schedule[i - 1])) {
            throw ValidationError("averaging schedule must be positive and increasing");
        }
    }
    if (schedule.back() > int(f.size())) {
        throw WindowOverflow("largest averaging length exceeds the process window");
    }

    LlnCheck check;
    const int n = f.start() - 1;
    for (int m : schedule) {
        check.values.push_back(max_component(cesaro_norm(f, T, n, m).value));
    }
    check.final_value = check.values.back();

    // an identically-zero process cannot decay strictly; treat it as the
    // degenerate pass
    double largest = *std::max_element(check.values.begin(), check.values.end());
    if (largest <= 1e-15) {
        check.decreasing = true;
        check.geo_mean_ratio = 0.0;
        check.pass = true;
        return check;
    }

    check.decreasing = true;
    for (std::size_t i = 1; i < check.values.size(); ++i) {
        if (check.values[i] >= check.values[i - 1]) {
            check.decreasing = false;
        }
    }
    if (check.values.size() > 1 && check.values.front() > 0.0) {
        double steps = double(check.values.size() - 1);
        check.geo_mean_ratio = std::pow(check.final_value / check.values.front(), 1.0 / steps);
    } else {
        check.geo_mean_ratio = 1.0;
    }
    check.pass = check.decreasing && check.geo_mean_ratio <= ratio_bound &&
                 check.final_value <= final_bound;
    return check;
}

}  // namespace riesz
