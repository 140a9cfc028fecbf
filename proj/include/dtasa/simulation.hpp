#ifndef DTASA_SIMULATION_HPP
#define DTASA_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dtasa/params.hpp"
#include "dtasa/study.hpp"

namespace dtasa {

enum class ContrastVariant { Dor, Sensitivity, Specificity };

std::string to_string(ContrastVariant v);

// One simulation scenario: population model, true selection function, and
// the tabulated true SAUC.
struct Scenario {
    int id = 0;
    double mu1 = 0, mu2 = 0;
    double tau1 = 1, tau2 = 1;
    double rho = 0;
    double beta = 0.5;
    double alpha = 0; // intercept matching the contrast variant below
    ContrastVariant variant = ContrastVariant::Dor;
    double sauc_true = 0;

    double tau12() const { return rho * tau1 * tau2; }
    BivariateParams biv() const { return {mu1, mu2, tau1, tau2, rho}; }
    ContrastVector contrast() const;
};

// The 12 tabulated scenarios, resolved for one contrast variant. Throws
// DomainError for unknown ids. Asserts sauc(params) matches the tabulated
// truth within 1e-3 at load.
Scenario scenario_catalog(int id, ContrastVariant variant);
std::vector<int> scenario_ids();

struct PopulationStudy {
    StudySummary summary;
    double p_select = 0; // p_i = Phi(beta t_i + alpha)
};

// Appendix-style population draw: per study, s_1 and s_2 are independent
// N(0.5, 0.5^2) draws squared (redrawn when exactly zero), y comes from the
// marginal bivariate normal, p_i from the probit selection function.
std::vector<PopulationStudy> generate_population(const Scenario& scenario, int s_population,
                                                 std::uint64_t seed);

struct SelectionOutcome {
    std::vector<StudySummary> selected;
    double p_hat = 0; // population mean of p_i, not the realized fraction
};

SelectionOutcome apply_selection(const std::vector<PopulationStudy>& population,
                                 std::uint64_t seed);

enum class SimMethod { ReitsmaP, ReitsmaO, ProposedEstimated, ProposedCorrect, ProposedMis };

std::string to_string(SimMethod m);
SimMethod sim_method_from_string(const std::string& name);

struct SimSummary {
    int scenario_id = 0;
    SimMethod method = SimMethod::ReitsmaP;
    int s_population = 0;
    double median = 0, q1 = 0, q3 = 0;
    double convergence_rate = 0; // percent
    int n_converged = 0;
};

struct SimOptions {
    int s_population = 200;
    int reps = 200;
    std::uint64_t base_seed = 1;
    int threads = 1;
};

// Runs the replication study. Per-replication failures count against the
// convergence rate and never abort the run. Deterministic given
// (scenario, options) regardless of the thread count.
std::vector<SimSummary> run_study(const Scenario& scenario, const std::vector<SimMethod>& methods,
                                  const SimOptions& options);

// R type-7 quantile on a copy of the data.
double quantile_type7(std::vector<double> v, double prob);

} // namespace dtasa

#endif
