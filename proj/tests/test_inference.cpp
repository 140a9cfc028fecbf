#include <doctest.h>

#include <cmath>
#include <vector>

#include "dtasa/errors.hpp"
#include "dtasa/inference.hpp"
#include "dtasa/reitsma.hpp"
#include "dtasa/rng.hpp"
#include "dtasa/sa.hpp"

using namespace dtasa;

TEST_CASE("cholesky factorizes and solves") {
    // A = [[4, 2], [2, 3]]
    std::vector<double> a{4, 2, 2, 3};
    REQUIRE(cholesky(a, 2));
    CHECK(a[0] == doctest::Approx(2.0));
    CHECK(a[2] == doctest::Approx(1.0));
    CHECK(a[3] == doctest::Approx(std::sqrt(2.0)));

    // solve A x = [8, 7] -> x = [1.25, 1.5]
    const auto x = cholesky_solve(a, 2, {8, 7});
    CHECK(x[0] == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(x[1] == doctest::Approx(1.5).epsilon(1e-13));

    std::vector<double> bad{1, 2, 2, 1}; // indefinite
    CHECK_FALSE(cholesky(bad, 2));
}

TEST_CASE("observed information recovers the Hessian of a quadratic") {
    // f(x) = -0.5 x' A x with A = [[3, 1], [1, 2]]; -H = A everywhere
    LoglikFn f = [](const std::vector<double>& x) {
        return -0.5 * (3 * x[0] * x[0] + 2 * x[0] * x[1] + 2 * x[1] * x[1]);
    };
    const auto info = observed_information(f, {0.3, -0.7});
    REQUIRE(info.size() == 4);
    CHECK(info[0] == doctest::Approx(3.0).epsilon(1e-5));
    CHECK(info[1] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(info[2] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(info[3] == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("observed information rejects a non-concave point") {
    LoglikFn f = [](const std::vector<double>& x) { return 0.5 * x[0] * x[0]; };
    CHECK_THROWS_AS(observed_information(f, {1.0}), NonInvertibleHessian);
}

TEST_CASE("delta-method CI matches the frozen logit-scale example") {
    // sauc = 0.5, one free parameter, grad = 0.1, information = 1:
    // se = 0.1, halfwidth on the logit scale = 1.959964 * 0.1 / 0.25
    const CiResult ci = sauc_ci(0.5, {0.1}, {1.0}, 0.95);
    CHECK(ci.se_sauc == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(ci.lo == doctest::Approx(0.31346153569765).epsilon(1e-10));
    CHECK(ci.hi == doctest::Approx(0.68653846430235).epsilon(1e-10));
    CHECK(ci.estimate == 0.5);
    CHECK(ci.level == 0.95);
}

TEST_CASE("delta-method CI stays inside (0,1) and brackets the estimate") {
    CounterRng rng = CounterRng::stream(31, 0);
    for (int k = 0; k < 50; ++k) {
        const double s = 0.1 + 0.8 * rng.uniform01();
        const double g = 0.01 + 0.3 * rng.uniform01();
        const double i = 1.0 + 9.0 * rng.uniform01();
        const CiResult ci = sauc_ci(s, {g}, {i}, 0.95);
        CHECK(ci.lo > 0.0);
        CHECK(ci.lo < s);
        CHECK(ci.hi > s);
        CHECK(ci.hi < 1.0);
    }
}

TEST_CASE("fit_sa attaches a CI on well-behaved data") {
    CounterRng rng = CounterRng::stream(77, 1);
    std::vector<StudySummary> data;
    const BivariateParams p{1.3, 1.1, 0.5, 0.6, -0.3};
    for (int i = 0; i < 30; ++i) {
        const double s1 = 0.1 + 0.3 * rng.uniform01();
        const double s2 = 0.1 + 0.3 * rng.uniform01();
        const double l11 = std::sqrt(p.tau1 * p.tau1 + s1);
        const double l21 = p.tau12() / l11;
        const double l22 = std::sqrt(p.tau2 * p.tau2 + s2 - l21 * l21);
        const double z1 = rng.normal(), z2 = rng.normal();
        data.push_back({p.mu1 + l11 * z1, p.mu2 + l21 * z1 + l22 * z2, s1, s2});
    }
    SaConfig cfg;
    cfg.p = 1.0;
    const SaFit sf = fit_sa(data, cfg);
    REQUIRE(sf.converged);
    if (sf.ci_present) {
        CHECK(sf.sauc_lo > 0.0);
        CHECK(sf.sauc_lo < sf.sauc);
        CHECK(sf.sauc_hi > sf.sauc);
        CHECK(sf.sauc_hi < 1.0);
        CHECK(sf.se_sauc > 0.0);
    }
}
