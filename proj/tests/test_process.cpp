#include <doctest.h>

#include <cmath>

#include "riesz/ar1.hpp"
#include "riesz/mixing.hpp"
#include "riesz/process.hpp"
#include "riesz/rng.hpp"

using namespace riesz;

namespace {

LatticeVector vec(const SpacePtr& s, std::vector<double> v) {
    return LatticeVector(s, std::move(v));
}

struct Ar1Setup {
    SpacePtr space;
    CondExpOperator T;
    FamilyOperators family;
    Ar1Instance f_inst;
    Ar1Instance g_inst;
};

Ar1Setup make_ar1_setup(std::uint64_t seed, int window, double theta_f = 0.72,
                        double theta_g = 0.75) {
    SpacePtr sp = make_uniform_space(8);
    CondExpOperator T = cond_exp(sp, Partition::trivial(8));
    Rng rng(seed);
    ProcessWindow noise = random_sign_noise(T, 1, window, 1.0, rng);
    FamilyOperators family = generated_family(noise, T);
    Ar1Instance f_inst = generate_ar1(LatticeVector::constant(sp, theta_f), noise, T);
    Ar1Instance g_inst = generate_ar1(LatticeVector::constant(sp, theta_g), noise, T);
    return {sp, T, std::move(family), std::move(f_inst), std::move(g_inst)};
}

NedCertificate observed_certificate(const ProcessWindow& f, const FamilyOperators& family, Lp p) {
    NedCertificate cert;
    cert.p = p;
    cert.start = f.start();
    cert.d.assign(f.size(), LatticeVector::unit(f.space()));
    for (int m = 0; m < int(f.size()); ++m) {
        LatticeVector worst = LatticeVector::zero(f.space());
        for (int n = f.start(); n <= f.end(); ++n) {
            worst = sup(worst, ned_defect(f, family, n, m, p).value);
        }
        cert.xi.push_back(std::move(worst));
    }
    return cert;
}

}  // namespace

TEST_CASE("generated_family from constants collapses to the base operator") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T = cond_exp(s4, Partition(4, {{0, 1}, {2, 3}}));
    std::vector<LatticeVector> eps(3, LatticeVector::unit(s4));
    FamilyOperators family = generated_family(ProcessWindow(1, eps), T);
    for (int i = 1; i <= 3; ++i) {
        for (int j = i; j <= 3; ++j) {
            CHECK(family.member(i, j).partition() == T.partition());
        }
    }
}

TEST_CASE("generated_family joins level sets") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T = cond_exp(s4, Partition::trivial(4));
    LatticeVector e1 = vec(s4, {1, 1, -1, -1});
    LatticeVector e2 = vec(s4, {1, -1, 1, -1});
    FamilyOperators family = generated_family(ProcessWindow(1, {e1, e2}), T);

    CHECK(family.member(1, 1).partition() == Partition(4, {{0, 1}, {2, 3}}));
    CHECK(family.member(2, 2).partition() == Partition(4, {{0, 2}, {1, 3}}));
    CHECK(family.member(1, 2).partition() == Partition::discrete(4));

    // clamping: outside the window the family collapses toward the base
    CHECK(family.member(-5, 0).partition() == T.partition());
    CHECK(family.member(3, 7).partition() == T.partition());
    CHECK(family.member(0, 1).partition() == family.member(1, 1).partition());
    CHECK(family.backward_tail(2).partition() == Partition::discrete(4));
}

TEST_CASE("family nesting is validated") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T = cond_exp(s4, Partition::trivial(4));
    CondExpOperator fine = cond_exp(s4, Partition::discrete(4));
    CondExpOperator mid = cond_exp(s4, Partition(4, {{0, 1}, {2, 3}}));
    // grid for window of 2: entries (1,1), (1,2), (2,2); (1,2) must refine both
    CHECK_THROWS_AS(FamilyOperators(T, 1, {fine, mid, fine}), IncompatibleOperators);
    FamilyOperators ok(T, 1, {mid, fine, fine});
    CHECK(ok.member(1, 2).partition() == Partition::discrete(4));
}

TEST_CASE("ned_defect vanishes for adapted inputs") {
    Ar1Setup s = make_ar1_setup(101, 8);
    const ProcessWindow& noise = s.f_inst.noise;
    // the generator itself lies in the range of its level operator
    for (int n = noise.start(); n <= noise.end(); ++n) {
        for (int m : {0, 1, 3}) {
            CHECK(max_abs(ned_defect(noise, s.family, n, m, Lp::two).value) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(ned_defect(noise, s.family, 99, 0, Lp::two), IndexOutOfWindow);
}

TEST_CASE("verify_ned accepts the zero process and locates violations") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T = cond_exp(s4, Partition::trivial(4));
    std::vector<LatticeVector> eps;
    Rng rng(7);
    for (int i = 0; i < 4; ++i) {
        std::vector<double> v(4);
        for (double& x : v) {
            x = rng.uniform(-1, 1);
        }
        eps.emplace_back(s4, std::move(v));
    }
    FamilyOperators family = generated_family(ProcessWindow(1, eps), T);

    std::vector<LatticeVector> zeros(4, LatticeVector::zero(s4));
    ProcessWindow zero_process(1, zeros);
    NedCertificate cert;
    cert.p = Lp::two;
    cert.start = 1;
    cert.d.assign(4, LatticeVector::unit(s4));
    cert.xi.assign(4, LatticeVector::zero(s4));
    NedCheck check = verify_ned(zero_process, family, cert);
    CHECK(check.bound.pass);
    CHECK(check.decay.pass);

    // a genuinely dependent process with a halved certificate fails and
    // reports where
    Ar1Setup s = make_ar1_setup(102, 12);
    NedCertificate good = ar1_ned_certificate(s.f_inst);
    CHECK(verify_ned(s.f_inst.process, s.family, good).bound.pass);
    NedCertificate shrunk = good;
    for (auto& x : shrunk.xi) {
        x *= 0.1;
    }
    NedCheck bad = verify_ned(s.f_inst.process, s.family, shrunk);
    CHECK_FALSE(bad.bound.pass);
    CHECK(bad.bound.n.has_value());
    CHECK(bad.bound.m.has_value());
    LatticeVector defect =
        ned_defect(s.f_inst.process, s.family, int(*bad.bound.n), int(*bad.bound.m), Lp::two)
            .value;
    LatticeVector bound = multiply(shrunk.d[std::size_t(*bad.bound.n - 1)],
                                   shrunk.xi[std::size_t(*bad.bound.m)]);
    CHECK(min_component(bound - defect) < 0.0);
}

TEST_CASE("halving a tight certificate fails with a located grid point") {
    Ar1Setup s = make_ar1_setup(109, 12);
    NedCertificate tight = observed_certificate(s.f_inst.process, s.family, Lp::two);
    CHECK(verify_ned(s.f_inst.process, s.family, tight).bound.pass);
    NedCertificate halved = tight;
    for (auto& x : halved.xi) {
        x *= 0.5;
    }
    NedCheck bad = verify_ned(s.f_inst.process, s.family, halved);
    CHECK_FALSE(bad.bound.pass);
    CHECK(bad.bound.n.has_value());
    CHECK(bad.bound.m.has_value());
}

TEST_CASE("NED in a stronger norm implies NED in weaker norms") {
    Ar1Setup s = make_ar1_setup(103, 10);
    NedCertificate inf_cert = observed_certificate(s.f_inst.process, s.family, Lp::inf);
    CHECK(verify_ned(s.f_inst.process, s.family, inf_cert).bound.pass);

    NedCertificate as_two = inf_cert;
    as_two.p = Lp::two;
    CHECK(verify_ned(s.f_inst.process, s.family, as_two).bound.pass);
    NedCertificate as_one = inf_cert;
    as_one.p = Lp::one;
    CHECK(verify_ned(s.f_inst.process, s.family, as_one).bound.pass);

    // inf-norm bound controls the pointwise gap as well
    for (int n = s.f_inst.process.start(); n <= s.f_inst.process.end(); ++n) {
        for (int m = 0; m < int(inf_cert.xi.size()); ++m) {
            const LatticeVector& fn = s.f_inst.process.at(n);
            LatticeVector gap = abs(fn - s.family.member(n - m, n + m).apply(fn));
            LatticeVector bound = multiply(inf_cert.d[std::size_t(n - 1)],
                                           inf_cert.xi[std::size_t(m)]);
            CHECK(leq(gap, bound, 1e-9));
        }
    }
}

TEST_CASE("sum certificates cover the sum process") {
    Ar1Setup s = make_ar1_setup(104, 24);
    NedCertificate certF = ar1_ned_certificate(s.f_inst);
    NedCertificate certG = ar1_ned_certificate(s.g_inst);

    NedCertificate combined = ned_sum_certificate(certF, certG);
    CHECK(combined.p == Lp::two);
    ProcessWindow sum = add_windows(s.f_inst.process, s.g_inst.process);
    NedCheck check = verify_ned(sum, s.family, combined);
    CHECK(check.bound.pass);
    CHECK(check.decay.pass);

    // identical certificates join idempotently and double the decay
    NedCertificate doubled = ned_sum_certificate(certF, certF);
    CHECK(approx_equal(doubled.d[0], certF.d[0], 0.0));
    CHECK(approx_equal(doubled.xi[1], 2.0 * certF.xi[1], 0.0));

    // mixed exponents land at the smaller one
    NedCertificate inf_cert = observed_certificate(s.g_inst.process, s.family, Lp::inf);
    NedCertificate mixed = ned_sum_certificate(certF, inf_cert);
    CHECK(mixed.p == Lp::two);
}

TEST_CASE("product certificates cover the product process") {
    Ar1Setup s = make_ar1_setup(105, 24);
    NedCertificate certF = ar1_ned_certificate(s.f_inst);
    NedCertificate certG = ar1_ned_certificate(s.g_inst);
    ProcessWindow product = multiply_windows(s.f_inst.process, s.g_inst.process);

    // both factors in the 2-norm
    ProductBounds b22;
    for (const auto& fn : s.f_inst.process.vectors()) {
        b22.norm_f.push_back(norm(fn, s.T, Lp::two).value);
    }
    for (const auto& gn : s.g_inst.process.vectors()) {
        b22.norm_g.push_back(norm(gn, s.T, Lp::two).value);
    }
    NedCertificate prod22 = ned_product_certificate(certF, certG, b22);
    CHECK(prod22.p == Lp::one);
    CHECK(verify_ned(product, s.family, prod22).bound.pass);

    // bounded factor in the inf norm
    NedCertificate certG_inf = observed_certificate(s.g_inst.process, s.family, Lp::inf);
    ProductBounds binf;
    binf.norm_f = b22.norm_f;
    for (const auto& gn : s.g_inst.process.vectors()) {
        binf.h.push_back(norm(gn, s.T, Lp::inf).value);
        binf.r_g.push_back(LatticeVector::unit(s.space));
    }
    NedCertificate prod2inf = ned_product_certificate(certF, certG_inf, binf);
    CHECK(prod2inf.p == Lp::two);
    CHECK(verify_ned(product, s.family, prod2inf).bound.pass);

    // multiplying by the unit process reduces to the original certificate
    NedCertificate unit_cert;
    unit_cert.p = Lp::inf;
    unit_cert.start = certF.start;
    unit_cert.d.assign(certF.d.size(), LatticeVector::zero(s.space));
    unit_cert.xi.assign(certF.xi.size(), LatticeVector::zero(s.space));
    ProductBounds bu;
    bu.norm_f = b22.norm_f;
    bu.r_g.assign(certF.d.size(), LatticeVector::zero(s.space));
    bu.h.assign(certF.d.size(), LatticeVector::unit(s.space));
    NedCertificate reduced = ned_product_certificate(certF, unit_cert, bu);
    for (std::size_t i = 0; i < reduced.d.size(); ++i) {
        CHECK(approx_equal(reduced.d[i], certF.d[i], 1e-15));
    }
    for (std::size_t m = 0; m < reduced.xi.size(); ++m) {
        CHECK(approx_equal(reduced.xi[m], certF.xi[m], 1e-15));
    }

    ProductBounds missing;
    CHECK_THROWS_AS(ned_product_certificate(certF, certG_inf, missing), MissingBounds);
    CHECK_THROWS_AS(ned_product_certificate(prod22, certG, b22), MissingBounds);
}

TEST_CASE("shift certificates cover the shifted process") {
    Ar1Setup s = make_ar1_setup(106, 24);
    NedCertificate certF = ar1_ned_certificate(s.f_inst);

    NedCertificate zero_shift = ned_shift_certificate(certF, 0);
    CHECK(approx_equal(zero_shift.d[0], 2.0 * certF.d[0], 0.0));
    CHECK(approx_equal(zero_shift.xi[0], certF.xi[0], 0.0));

    const int shift = 2;
    ProcessWindow shifted = shift_window(s.f_inst.process, shift);
    NedCertificate shifted_cert = ned_shift_certificate(certF, shift);
    CHECK(shifted_cert.d.size() == shifted.size());
    NedCheck check = verify_ned(shifted, s.family, shifted_cert);
    CHECK(check.bound.pass);
    CHECK(check.decay.pass);

    CHECK_THROWS_AS(ned_shift_certificate(certF, int(certF.d.size())), WindowOverflow);
}

TEST_CASE("two-sided projection bound and its counterexample for factor one") {
    SpacePtr s2 = make_uniform_space(2);
    CondExpOperator U2 = cond_exp(s2, Partition::trivial(2));
    CondExpOperator V2 = cond_exp(s2, Partition::discrete(2));
    Report trivial_case = verify_two_sided_projection_bound(vec(s2, {1, -1}), U2, V2, U2, Lp::one);
    CHECK(trivial_case.pass);
    CHECK(trivial_case.worst_slack == doctest::Approx(2.0));

    // fixed counterexample: the finer projection has a larger defect, so
    // the factor cannot be improved to one
    SpacePtr s3 = make_space(3, {0.01, 0.99, 9.0});
    CondExpOperator U = cond_exp(s3, Partition::trivial(3));
    CondExpOperator V = cond_exp(s3, Partition(3, {{0, 1}, {2}}));
    LatticeVector f = vec(s3, {0.0, 1.0, 0.5});
    double lhs = max_abs(f - V.apply(f));
    double rhs = max_abs(f - U.apply(f));
    CHECK(lhs == doctest::Approx(0.99));
    CHECK(rhs == doctest::Approx(0.549));
    CHECK(lhs > rhs);  // factor one fails
    CHECK(verify_two_sided_projection_bound(f, U, V, U, Lp::inf).pass);

    CHECK_THROWS_AS(verify_two_sided_projection_bound(f, V, U, U, Lp::one), RangeNotNested);

    Rng rng(61);
    for (int t = 0; t < 200; ++t) {
        std::size_t atoms = std::size_t(rng.uniform_int(3, 8));
        std::vector<double> w(atoms);
        for (double& x : w) {
            x = rng.uniform(0.1, 2.0);
        }
        SpacePtr sp = make_space(atoms, std::move(w));
        std::vector<int> coarse(atoms), fine(atoms);
        for (std::size_t a = 0; a < atoms; ++a) {
            coarse[a] = rng.uniform_int(0, 2);
            fine[a] = coarse[a] * 3 + rng.uniform_int(0, 2);
        }
        CondExpOperator cu = cond_exp(sp, Partition::from_labels(coarse));
        CondExpOperator cv = cond_exp(sp, Partition::from_labels(fine));
        CondExpOperator base = cond_exp(sp, Partition::trivial(atoms));
        std::vector<double> fv(atoms);
        for (double& x : fv) {
            x = rng.uniform(-2, 2);
        }
        LatticeVector fvec(sp, std::move(fv));
        for (Lp p : {Lp::one, Lp::two, Lp::inf}) {
            CHECK(verify_two_sided_projection_bound(fvec, cu, cv, base, p).pass);
        }
    }
}

TEST_CASE("mixingale verification on a martingale-difference example") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T0 = cond_exp(s4, Partition::trivial(4));
    CondExpOperator T1 = cond_exp(s4, Partition(4, {{0, 1}, {2, 3}}));
    CondExpOperator T2 = cond_exp(s4, Partition::discrete(4));
    FiltrationWindow filt{0, {T0, T1, T2}};

    LatticeVector f1 = vec(s4, {1, 1, -1, -1});
    LatticeVector f2 = vec(s4, {1, -1, 2, -2});
    ProcessWindow f(1, {f1, f2});

    MixingaleCertificate cert;
    cert.p = Lp::one;
    cert.start = 1;
    cert.c = {norm(f1, T0, Lp::inf).value, norm(f2, T0, Lp::inf).value};
    cert.phi = {LatticeVector::unit(s4), LatticeVector::zero(s4), LatticeVector::zero(s4)};

    MixingaleCheck check = verify_mixingale(f, T0, filt, cert);
    CHECK(check.cond_past.pass);
    CHECK(check.cond_future.pass);
    CHECK(check.pass());

    // shrinking the first decay value breaks the gap-zero condition
    MixingaleCertificate broken = cert;
    broken.phi[0] = LatticeVector::constant(s4, 0.4);
    MixingaleCheck fail = verify_mixingale(f, T0, filt, broken);
    CHECK_FALSE(fail.cond_past.pass);
    CHECK(*fail.cond_past.m == 0);

    // zero process passes with zero scales
    std::vector<LatticeVector> zeros(2, LatticeVector::zero(s4));
    MixingaleCertificate zc = cert;
    zc.c = {LatticeVector::zero(s4), LatticeVector::zero(s4)};
    CHECK(verify_mixingale(ProcessWindow(1, zeros), T0, filt, zc).pass());

    // a decreasing family is required
    FiltrationWindow notfilt{0, {T2, T1, T0}};
    CHECK_THROWS_AS(verify_mixingale(f, T0, notfilt, cert), NotAFiltration);
}

TEST_CASE("mixingale_from_ned on the AR(1) pipeline") {
    Ar1Setup s = make_ar1_setup(107, 16);
    NedCertificate cert = ar1_ned_certificate(s.f_inst);
    MixingaleCertificate mix = mixingale_from_ned(s.f_inst.process, s.family, cert, 12);
    CHECK(mix.p == Lp::one);
    CHECK(mix.phi.size() == cert.xi.size() + 2);

    MixingaleCheck check =
        verify_mixingale(s.f_inst.process, s.T, backward_filtration(s.family), mix);
    CHECK(check.cond_past.pass);
    CHECK(check.cond_future.pass);

    // scales dominate both ingredients
    for (std::size_t i = 0; i < mix.c.size(); ++i) {
        CHECK(leq(cert.d[i], mix.c[i], 1e-15));
    }
    // decay values are non-increasing
    for (std::size_t m = 1; m < mix.phi.size(); ++m) {
        CHECK(leq(mix.phi[m], mix.phi[m - 1], 1e-15));
    }

    // a process with nonzero conditional mean is rejected
    std::vector<LatticeVector> shifted_vals;
    for (const auto& v : s.f_inst.process.vectors()) {
        shifted_vals.push_back(v + LatticeVector::unit(s.space));
    }
    ProcessWindow biased(1, shifted_vals);
    CHECK_THROWS_AS(mixingale_from_ned(biased, s.family, cert, 12), NonZeroConditionalMean);
}

TEST_CASE("pipeline with a two-block conditioning operator") {
    SpacePtr sp = make_uniform_space(8);
    CondExpOperator T = cond_exp(sp, Partition(8, {{0, 1, 2, 3}, {4, 5, 6, 7}}));
    Rng rng(113);
    ProcessWindow noise = random_sign_noise(T, 1, 12, 1.0, rng);
    FamilyOperators family = generated_family(noise, T);

    std::vector<double> tv(8);
    for (std::size_t i = 0; i < 8; ++i) {
        tv[i] = i < 4 ? 0.5 : 0.25;
    }
    LatticeVector theta(sp, std::move(tv));
    Ar1Instance inst = generate_ar1(theta, noise, T);
    NedCertificate cert = ar1_ned_certificate(inst);

    // decay factors are genuinely different across the two blocks
    CHECK(cert.xi[2][0] == doctest::Approx(0.25));
    CHECK(cert.xi[2][4] == doctest::Approx(std::pow(0.25, 3.0) / 0.75));
    CHECK(T.in_range(cert.xi[2], 1e-15));

    NedCheck check = verify_ned(inst.process, family, cert);
    CHECK(check.bound.pass);
    CHECK(check.decay.pass);

    MixingaleCertificate mix = mixingale_from_ned(inst.process, family, cert, 12);
    CHECK(verify_mixingale(inst.process, T, backward_filtration(family), mix).pass());
    for (const auto& phi : mix.phi) {
        CHECK(T.in_range(phi, 1e-12));
    }
}

TEST_CASE("mixingale construction matches its defining formula") {
    Ar1Setup s = make_ar1_setup(117, 10);
    NedCertificate cert = ar1_ned_certificate(s.f_inst);
    MixingaleCertificate mix = mixingale_from_ned(s.f_inst.process, s.family, cert, 12);

    for (std::size_t i = 0; i < mix.c.size(); ++i) {
        LatticeVector expected =
            sup(cert.d[i], norm(s.f_inst.process.at(int(i) + 1), s.T, Lp::inf).value);
        CHECK(approx_equal(mix.c[i], expected, 0.0));
    }
    // the raw decay values are already non-increasing here, so the
    // normalised certificate equals the formula term by term
    for (std::size_t m = 0; m < mix.phi.size(); ++m) {
        std::size_t k = m / 2;
        LatticeVector alpha_k = sequence_alpha(s.family, int(k), 12).value;
        LatticeVector phi_k = sequence_phi(s.family, int(k), 12).value;
        LatticeVector expected = 2.0 * (cert.xi[k] + inf(2.0 * alpha_k, phi_k));
        CHECK(approx_equal(mix.phi[m], expected, 1e-12));
    }
}

TEST_CASE("operators on a single atom are all trivial") {
    SpacePtr s1 = make_uniform_space(1);
    CondExpOperator T = cond_exp(s1, Partition::trivial(1));
    LatticeVector f(s1, {-3.0});
    CHECK(norm(f, T, Lp::one).value[0] == 3.0);
    CHECK(norm(f, T, Lp::two).value[0] == 3.0);
    CHECK(norm(f, T, Lp::inf).value[0] == 3.0);
    CHECK(max_abs(alpha_coefficient(T, T, T, 12).value) == 0.0);
    CHECK(max_abs(phi_coefficient(T, T, T, 12).value) == 0.0);
}

TEST_CASE("zero process gives a trivial mixingale") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T = cond_exp(s4, Partition::trivial(4));
    Rng rng(3);
    ProcessWindow noise = random_centered_noise(T, 1, 6, 1.0, rng);
    FamilyOperators family = generated_family(noise, T);

    std::vector<LatticeVector> zeros(6, LatticeVector::zero(s4));
    ProcessWindow zero_process(1, zeros);
    NedCertificate cert;
    cert.p = Lp::two;
    cert.start = 1;
    cert.d.assign(6, LatticeVector::constant(s4, 0.5));
    cert.xi.assign(6, LatticeVector::zero(s4));

    MixingaleCertificate mix = mixingale_from_ned(zero_process, family, cert, 12);
    for (const auto& c : mix.c) {
        CHECK(approx_equal(c, LatticeVector::constant(s4, 0.5), 1e-15));
    }
}

TEST_CASE("t_uniform_profile truncates bounded windows to zero") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T = cond_exp(s4, Partition::trivial(4));

    ProcessWindow units(1, {LatticeVector::unit(s4), LatticeVector::unit(s4)});
    std::vector<LatticeVector> profile = t_uniform_profile(units, T, {0.5, 1.0, 2.0});
    CHECK(approx_equal(profile[0], LatticeVector::unit(s4), 1e-15));  // below the bound
    CHECK(max_abs(profile[1]) == 0.0);  // cutoff at the bound: strict tail is empty
    CHECK(max_abs(profile[2]) == 0.0);

    ProcessWindow mixed(1, {vec(s4, {3, 0, 0, 0}), vec(s4, {0, -2, 0, 0})});
    std::vector<LatticeVector> prof = t_uniform_profile(mixed, T, {1.0, 2.0, 2.5, 3.0});
    CHECK(prof[0][0] == doctest::Approx(0.75));  // 3/4 from the first vector
    CHECK(prof[1][0] == doctest::Approx(0.75));
    CHECK(prof[2][0] == doctest::Approx(0.75));
    CHECK(max_abs(prof[3]) == 0.0);
    // non-increasing in the cutoff
    for (std::size_t i = 1; i < prof.size(); ++i) {
        CHECK(leq(prof[i], prof[i - 1], 1e-15));
    }

    CHECK_THROWS_AS(t_uniform_profile(units, T, {1.0, 0.5}), ValidationError);
}

TEST_CASE("cesaro_norm averages and cancels") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T = cond_exp(s4, Partition::trivial(4));

    std::vector<LatticeVector> zeros(4, LatticeVector::zero(s4));
    CHECK(max_abs(cesaro_norm(ProcessWindow(1, zeros), T, 0, 4).value) == 0.0);

    LatticeVector v = vec(s4, {1, -2, 3, -4});
    ProcessWindow alternating(1, {v, -v, v, -v});
    CHECK(max_abs(cesaro_norm(alternating, T, 0, 4).value) <= 1e-15);
    CHECK(max_abs(cesaro_norm(alternating, T, 0, 3).value) > 0.1);

    CHECK_THROWS_AS(cesaro_norm(alternating, T, 0, 5), WindowOverflow);
    CHECK_THROWS_AS(cesaro_norm(alternating, T, -1, 1), WindowOverflow);
}

TEST_CASE("lln_check on decaying, zero and constant processes") {
    SpacePtr sp = make_uniform_space(8);
    CondExpOperator T = cond_exp(sp, Partition::trivial(8));

    Rng rng(71);
    ProcessWindow noise = random_centered_noise(T, 1, 2048, 1.0, rng);
    Ar1Instance inst = generate_ar1(LatticeVector::constant(sp, 0.5), noise, T);
    LlnCheck good = lln_check(inst.process, T, {32, 128, 512, 2048}, 0.9, 0.08);
    CHECK(good.pass);
    CHECK(good.decreasing);
    CHECK(good.geo_mean_ratio <= 0.9);

    std::vector<LatticeVector> zeros(64, LatticeVector::zero(sp));
    CHECK(lln_check(ProcessWindow(1, zeros), T, {8, 32}, 0.9, 0.05).pass);

    // centered independent-style noise decays on the full schedule
    Rng noise_rng(72);
    ProcessWindow iid = random_centered_noise(T, 1, 4096, 1.0, noise_rng);
    CHECK(lln_check(iid, T, {64, 256, 1024, 4096}, 0.9, 0.05).pass);

    std::vector<LatticeVector> ones(64, LatticeVector::unit(sp));
    LlnCheck flat = lln_check(ProcessWindow(1, ones), T, {8, 32}, 0.9, 0.05);
    CHECK_FALSE(flat.pass);

    CHECK_THROWS_AS(lln_check(inst.process, T, {}, 0.9, 0.05), ValidationError);
    CHECK_THROWS_AS(lln_check(inst.process, T, {16, 4096}, 0.9, 0.05), WindowOverflow);
}
