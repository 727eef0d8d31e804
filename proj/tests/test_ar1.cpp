#include <doctest.h>

#include <cmath>

#include "riesz/ar1.hpp"
#include "riesz/rng.hpp"

using namespace riesz;

namespace {

LatticeVector vec(const SpacePtr& s, std::vector<double> v) {
    return LatticeVector(s, std::move(v));
}

}  // namespace

TEST_CASE("center_noise removes the blockwise mean") {
    SpacePtr s2 = make_uniform_space(2);
    CondExpOperator T = cond_exp(s2, Partition::trivial(2));

    ProcessWindow block_constant(1, {LatticeVector::constant(s2, 3.0)});
    CHECK(max_abs(center_noise(block_constant, T).at(1)) == 0.0);

    ProcessWindow raw(1, {vec(s2, {1, 3})});
    LatticeVector eps = center_noise(raw, T).at(1);
    CHECK(eps[0] == doctest::Approx(-1.0));
    CHECK(eps[1] == doctest::Approx(1.0));

    SpacePtr sw = make_space(2, {0.25, 0.75});
    CondExpOperator Tw = cond_exp(sw, Partition::trivial(2));
    LatticeVector epsw = center_noise(ProcessWindow(1, {vec(sw, {1, 3})}), Tw).at(1);
    CHECK(epsw[0] == doctest::Approx(-1.5));
    CHECK(epsw[1] == doctest::Approx(0.5));
    CHECK(max_abs(Tw.apply(epsw)) <= 1e-15);
}

TEST_CASE("generate_ar1 runs the recursion and guards its inputs") {
    SpacePtr s2 = make_uniform_space(2);
    CondExpOperator T = cond_exp(s2, Partition::trivial(2));

    // zero noise keeps the process at zero
    ProcessWindow zero_noise(1, {LatticeVector::zero(s2), LatticeVector::zero(s2)});
    Ar1Instance zero = generate_ar1(LatticeVector::constant(s2, 0.5), zero_noise, T);
    CHECK(max_abs(zero.process.at(1)) == 0.0);
    CHECK(max_abs(zero.process.at(2)) == 0.0);

    // memoryless case reproduces the noise
    LatticeVector e1 = vec(s2, {1, -1});
    ProcessWindow noise(1, {e1, e1});
    Ar1Instance memoryless = generate_ar1(LatticeVector::zero(s2), noise, T);
    CHECK(approx_equal(memoryless.process.at(2), e1, 0.0));

    // worked recursion: theta = 0.5, two equal noise steps
    Ar1Instance worked = generate_ar1(LatticeVector::constant(s2, 0.5), noise, T);
    CHECK(worked.process.at(1)[0] == doctest::Approx(1.0));
    CHECK(worked.process.at(2)[0] == doctest::Approx(1.5));
    CHECK(worked.process.at(2)[1] == doctest::Approx(-1.5));

    CHECK_THROWS_AS(generate_ar1(LatticeVector::constant(s2, 1.0), noise, T),
                    ThetaNotContractive);
    CHECK_THROWS_AS(generate_ar1(vec(s2, {0.5, 0.25}), noise, T), ThetaNotInRangeOfT);
    ProcessWindow biased(1, {LatticeVector::unit(s2)});
    CHECK_THROWS_AS(generate_ar1(LatticeVector::constant(s2, 0.5), biased, T),
                    NonZeroConditionalMean);
}

TEST_CASE("ar1_ned_certificate closed forms") {
    SpacePtr s2 = make_uniform_space(2);
    CondExpOperator T = cond_exp(s2, Partition::trivial(2));
    Rng rng(5);
    ProcessWindow noise = random_centered_noise(T, 1, 8, 1.0, rng);

    // theta = 0.5 e: xi_m = 0.5^m exactly
    Ar1Instance half = generate_ar1(LatticeVector::constant(s2, 0.5), noise, T);
    NedCertificate cert = ar1_ned_certificate(half);
    CHECK(cert.p == Lp::two);
    for (std::size_t m = 0; m < cert.xi.size(); ++m) {
        CHECK(cert.xi[m][0] == std::pow(0.5, double(m)));
        CHECK(approx_equal(cert.d[m], half.g_bound, 0.0));
    }

    // theta = 0: xi vanishes for every gap
    Ar1Instance flat = generate_ar1(LatticeVector::zero(s2), noise, T);
    for (const auto& x : ar1_ned_certificate(flat).xi) {
        CHECK(max_abs(x) == 0.0);
    }

    // blockwise theta follows the componentwise formula
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T2 = cond_exp(s4, Partition(4, {{0, 1}, {2, 3}}));
    Rng rng2(6);
    ProcessWindow noise2 = random_centered_noise(T2, 1, 6, 1.0, rng2);
    Ar1Instance block = generate_ar1(vec(s4, {0.5, 0.5, 0.25, 0.25}), noise2, T2);
    NedCertificate bc = ar1_ned_certificate(block);
    for (std::size_t m = 0; m < bc.xi.size(); ++m) {
        CHECK(bc.xi[m][0] == doctest::Approx(std::pow(0.5, double(m))));
        CHECK(bc.xi[m][2] ==
              doctest::Approx(std::pow(0.25, double(m) + 1.0) / 0.75));
    }
}

TEST_CASE("the closed-form certificate verifies for many seeds and thetas") {
    for (bool sign_noise : {true, false}) {
        for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
            for (double theta : {0.0, 0.25, 0.5, 0.75}) {
                SpacePtr sp = make_uniform_space(8);
                CondExpOperator T = cond_exp(sp, Partition::trivial(8));
                Rng rng(seed);
                ProcessWindow noise = sign_noise
                                          ? random_sign_noise(T, 1, 16, 1.0, rng)
                                          : random_centered_noise(T, 1, 16, 1.0, rng);
                FamilyOperators family = generated_family(noise, T);
                Ar1Instance inst = generate_ar1(LatticeVector::constant(sp, theta), noise, T);
                NedCertificate cert = ar1_ned_certificate(inst);
                CHECK(verify_ned(inst.process, family, cert).bound.pass);
                if (sign_noise && theta > 0.0) {
                    // coarse noise leaves genuinely nonzero defects behind
                    double worst = 0.0;
                    for (int n = 2; n <= inst.process.end(); ++n) {
                        worst = std::max(
                            worst,
                            max_abs(ned_defect(inst.process, family, n, 0, Lp::two).value));
                    }
                    CHECK(worst > 1e-3);
                }
            }
        }
    }
}

TEST_CASE("the truncated expansion dominates the projection defect") {
    SpacePtr sp = make_uniform_space(8);
    CondExpOperator T = cond_exp(sp, Partition::trivial(8));
    Rng rng(21);
    ProcessWindow noise = random_sign_noise(T, 1, 12, 1.0, rng);
    FamilyOperators family = generated_family(noise, T);
    LatticeVector theta = LatticeVector::constant(sp, 0.6);
    Ar1Instance inst = generate_ar1(theta, noise, T);

    for (int n = 2; n <= inst.process.end(); ++n) {
        for (int m = 0; m <= 4; ++m) {
            LatticeVector defect = ned_defect(inst.process, family, n, m, Lp::two).value;
            // partial history sum of depth m lies in the projection's range
            LatticeVector partial = LatticeVector::zero(sp);
            LatticeVector power = LatticeVector::unit(sp);
            for (int i = 0; i <= m && n - i >= noise.start(); ++i) {
                partial += multiply(power, noise.at(n - i));
                power = multiply(power, theta);
            }
            LatticeVector competitor =
                norm(inst.process.at(n) - partial, T, Lp::two).value;
            CHECK(leq(defect, competitor, 1e-9));
        }
    }
}

TEST_CASE("geometric_sum matches the closed form") {
    SpacePtr s2 = make_uniform_space(2);
    GeometricSum gs = geometric_sum(LatticeVector::constant(s2, 0.5), 40);
    CHECK(gs.closed_form[0] == doctest::Approx(2.0));
    CHECK(std::fabs(gs.partial[0] - 2.0) <= std::pow(0.5, 41.0) * 2.0 + 1e-15);

    GeometricSum mixed = geometric_sum(vec(s2, {0.5, 0.25}), 10);
    CHECK(mixed.closed_form[0] == doctest::Approx(2.0));
    CHECK(mixed.closed_form[1] == doctest::Approx(4.0 / 3.0));

    GeometricSum zero = geometric_sum(LatticeVector::zero(s2), 7);
    CHECK(approx_equal(zero.partial, zero.closed_form, 0.0));

    // truncation error bound: closed - partial <= theta^{m+1} * closed
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        double th = rng.uniform(0.0, 0.95);
        int terms = rng.uniform_int(0, 30);
        GeometricSum g = geometric_sum(LatticeVector::constant(s2, th), terms);
        LatticeVector gap = g.closed_form - g.partial;
        double budget = std::pow(th, double(terms + 1)) * g.closed_form[0];
        CHECK(gap[0] <= budget + 1e-12);
        CHECK(gap[0] >= -1e-12);
    }

    CHECK_THROWS_AS(geometric_sum(LatticeVector::constant(s2, 1.0), 5), NotContractive);
    CHECK_THROWS_AS(geometric_sum(LatticeVector::constant(s2, -0.5), 5), NotContractive);
}

TEST_CASE("power_decay_check counts steps to the tolerance") {
    SpacePtr s2 = make_uniform_space(2);
    CHECK(power_decay_check(LatticeVector::constant(s2, 0.5), 1e-3) == 10);
    CHECK(power_decay_check(LatticeVector::zero(s2), 1e-3) == 1);
    CHECK(power_decay_check(vec(s2, {0.9, 0.1}), 0.5) == 7);

    // monotone non-increasing in the tolerance
    int prev = power_decay_check(LatticeVector::constant(s2, 0.8), 1e-6);
    for (double tol : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
        int cur = power_decay_check(LatticeVector::constant(s2, 0.8), tol);
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("projection optimality with the worked four-atom example") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator T = cond_exp(s4, Partition::trivial(4));
    CondExpOperator S = cond_exp(s4, Partition(4, {{0, 1}, {2, 3}}));
    LatticeVector f = vec(s4, {1, 2, 3, 4});

    LatticeVector residual = T.apply(multiply(f - S.apply(f), f - S.apply(f)));
    CHECK(residual[0] == doctest::Approx(0.25));
    LatticeVector total = T.apply(multiply(f, f));  // competitor g = 0
    CHECK(total[0] == doctest::Approx(7.5));
    LatticeVector sf2 = T.apply(multiply(S.apply(f), S.apply(f)));
    CHECK(sf2[0] == doctest::Approx(7.25));
    CHECK(residual[0] + sf2[0] == doctest::Approx(total[0]));

    Rng rng(33);
    Report r = verify_projection_optimality(f, S, T, 50, rng);
    CHECK(r.pass);
    CHECK(r.worst_slack >= -1e-9);

    // random sweeps over random compatible pairs
    for (int t = 0; t < 30; ++t) {
        std::size_t atoms = std::size_t(rng.uniform_int(2, 8));
        std::vector<double> w(atoms);
        for (double& x : w) {
            x = rng.uniform(0.2, 1.2);
        }
        SpacePtr sp = make_space(atoms, std::move(w));
        std::vector<int> labels(atoms);
        for (auto& l : labels) {
            l = rng.uniform_int(0, 2);
        }
        CondExpOperator Sr = cond_exp(sp, Partition::from_labels(labels));
        CondExpOperator Tr = cond_exp(sp, Partition::trivial(atoms));
        std::vector<double> fv(atoms);
        for (double& x : fv) {
            x = rng.uniform(-2, 2);
        }
        CHECK(verify_projection_optimality(LatticeVector(sp, fv), Sr, Tr, 10, rng).pass);
    }
}

TEST_CASE("averaging pull-through across nested operators") {
    SpacePtr s4 = make_uniform_space(4);
    CondExpOperator global = cond_exp(s4, Partition::trivial(4));
    CondExpOperator pairs = cond_exp(s4, Partition(4, {{0, 1}, {2, 3}}));

    LatticeVector g = vec(s4, {1, -2, 0.5, 3});
    LatticeVector h = vec(s4, {2, 1, -1, 0});

    // single operator: its own averaging identity
    CHECK(verify_averaging_pull(pairs, pairs, g, h).pass);
    // global V reduces the identity to homogeneity
    CHECK(verify_averaging_pull(pairs, global, g, h).pass);
    CHECK_THROWS_AS(verify_averaging_pull(global, pairs, g, h), OperatorsNotNested);

    Rng rng(37);
    for (int t = 0; t < 50; ++t) {
        std::size_t atoms = 8;
        SpacePtr sp = make_uniform_space(atoms);
        std::vector<int> coarse(atoms), fine(atoms);
        for (std::size_t a = 0; a < atoms; ++a) {
            coarse[a] = rng.uniform_int(0, 1);
            fine[a] = coarse[a] * 2 + rng.uniform_int(0, 1);
        }
        CondExpOperator V = cond_exp(sp, Partition::from_labels(coarse));
        CondExpOperator U = cond_exp(sp, Partition::from_labels(fine));
        std::vector<double> gv(atoms), hv(atoms);
        for (std::size_t a = 0; a < atoms; ++a) {
            gv[a] = rng.uniform(-2, 2);
            hv[a] = rng.uniform(-2, 2);
        }
        Report r = verify_averaging_pull(U, V, LatticeVector(sp, gv), LatticeVector(sp, hv));
        CHECK(r.pass);
        CHECK(r.worst_slack >= -1e-12);
    }
}
