#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <vector>

#include "dtasa/errors.hpp"
#include "dtasa/simulation.hpp"

using namespace dtasa;

TEST_CASE("scenario catalog has 12 rows with exact tau12 products") {
    const auto ids = scenario_ids();
    REQUIRE(ids.size() == 12);
    for (int id : ids) {
        const Scenario s = scenario_catalog(id, ContrastVariant::Dor);
        CHECK(s.id == id);
        CHECK(s.tau12() == s.rho * s.tau1 * s.tau2);
        CHECK(s.sauc_true > 0.5);
        CHECK(s.sauc_true < 1.0);
    }
    // later rows use tau = sqrt(1/2) so rho * tau1 * tau2 lands exactly on
    // the tabulated covariance
    const Scenario s7 = scenario_catalog(7, ContrastVariant::Dor);
    CHECK(s7.tau12() == doctest::Approx(-0.15).epsilon(1e-15));
    const Scenario s1 = scenario_catalog(1, ContrastVariant::Dor);
    CHECK(s1.tau12() == doctest::Approx(-0.6).epsilon(1e-15));

    CHECK_THROWS_AS(scenario_catalog(13, ContrastVariant::Dor), DomainError);
    CHECK_THROWS_AS(scenario_catalog(0, ContrastVariant::Sensitivity), DomainError);
}

TEST_CASE("scenario intercepts differ by contrast variant") {
    const Scenario d = scenario_catalog(3, ContrastVariant::Dor);
    const Scenario se = scenario_catalog(3, ContrastVariant::Sensitivity);
    const Scenario sp = scenario_catalog(3, ContrastVariant::Specificity);
    CHECK(d.alpha != se.alpha);
    CHECK(se.alpha != sp.alpha);
    CHECK(d.contrast().c1() == doctest::Approx(std::sqrt(0.5)));
    CHECK(se.contrast().c1() == 1.0);
    CHECK(sp.contrast().c1() == 0.0);
}

TEST_CASE("type-7 quantile matches R") {
    std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(quantile_type7(v, 0.25) == doctest::Approx(3.25).epsilon(1e-14));
    CHECK(quantile_type7(v, 0.5) == doctest::Approx(5.5).epsilon(1e-14));
    CHECK(quantile_type7(v, 0.75) == doctest::Approx(7.75).epsilon(1e-14));
    CHECK(quantile_type7(v, 0.0) == 1.0);
    CHECK(quantile_type7(v, 1.0) == 10.0);
    CHECK(quantile_type7({4.0}, 0.5) == 4.0);
}

TEST_CASE("generate_population is deterministic and well formed") {
    const Scenario sc = scenario_catalog(1, ContrastVariant::Dor);
    const auto pop1 = generate_population(sc, 100, 42);
    const auto pop2 = generate_population(sc, 100, 42);
    REQUIRE(pop1.size() == 100);
    for (std::size_t i = 0; i < pop1.size(); ++i) {
        CHECK(pop1[i].summary.y1 == pop2[i].summary.y1);
        CHECK(pop1[i].p_select == pop2[i].p_select);
        CHECK(pop1[i].summary.s1_sq > 0.0);
        CHECK(pop1[i].summary.s2_sq > 0.0);
        CHECK(pop1[i].p_select > 0.0);
        CHECK(pop1[i].p_select < 1.0);
    }
    const auto pop3 = generate_population(sc, 100, 43);
    CHECK(pop3[0].summary.y1 != pop1[0].summary.y1);
}

TEST_CASE("apply_selection reports the population mean selection probability") {
    const Scenario sc = scenario_catalog(1, ContrastVariant::Dor);
    const auto pop = generate_population(sc, 500, 7);
    const auto out = apply_selection(pop, 11);
    double mean_p = 0;
    for (const auto& s : pop) mean_p += s.p_select / static_cast<double>(pop.size());
    CHECK(out.p_hat == doctest::Approx(mean_p).epsilon(1e-14));
    CHECK(out.selected.size() <= pop.size());
    CHECK(!out.selected.empty());
    // thinning keeps roughly p_hat of the population
    CHECK(static_cast<double>(out.selected.size()) / pop.size() ==
          doctest::Approx(mean_p).epsilon(0.25));
}

TEST_CASE("sim method names round trip") {
    for (SimMethod m : {SimMethod::ReitsmaP, SimMethod::ReitsmaO, SimMethod::ProposedEstimated,
                        SimMethod::ProposedCorrect, SimMethod::ProposedMis}) {
        CHECK(sim_method_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(sim_method_from_string("nope"), DomainError);
}

TEST_CASE("run_study is deterministic across thread counts") {
    const Scenario sc = scenario_catalog(1, ContrastVariant::Dor);
    SimOptions opt;
    opt.s_population = 40;
    opt.reps = 8;
    opt.base_seed = 5;
    const std::vector<SimMethod> methods{SimMethod::ReitsmaP, SimMethod::ReitsmaO};

    opt.threads = 1;
    const auto a = run_study(sc, methods, opt);
    opt.threads = 4;
    const auto b = run_study(sc, methods, opt);
    REQUIRE(a.size() == methods.size());
    REQUIRE(b.size() == methods.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].method == b[i].method);
        CHECK(a[i].median == b[i].median);
        CHECK(a[i].q1 == b[i].q1);
        CHECK(a[i].q3 == b[i].q3);
        CHECK(a[i].convergence_rate == b[i].convergence_rate);
        CHECK(a[i].median > 0.0);
        CHECK(a[i].median < 1.0);
    }
}
