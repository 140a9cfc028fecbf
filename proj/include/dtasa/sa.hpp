#ifndef DTASA_SA_HPP
#define DTASA_SA_HPP

#include <optional>
#include <vector>

#include "dtasa/params.hpp"
#include "dtasa/reitsma.hpp"
#include "dtasa/selection.hpp"
#include "dtasa/study.hpp"

namespace dtasa {

struct ContrastMode {
    bool estimate = true;
    double fixed_c1 = 0.7071067811865475244; // used when estimate == false

    static ContrastMode estimated() { return {true, 0.0}; }
    static ContrastMode fixed(double c1) { return {false, c1}; }
};

struct SaConfig {
    double p = 1.0; // marginal selection probability, (0, 1]
    ContrastMode contrast_mode = ContrastMode::estimated();
    double beta_min = 0.0;
    double beta_max = 2.0;
    double mu_abs_bound = 5.0;
    double tau_max = 3.0;
    double initial_beta = 1.0;
    double initial_c1 = 0.5;
    double level = 0.95;
};

struct SaFit {
    BivariateParams biv;
    SelectionParams sel; // alpha = alpha_p at the optimum (+inf when p = 1)
    double p = 1.0;
    double loglik = 0;
    double sauc = 0;
    double sauc_lo = 0;
    double sauc_hi = 0;
    double se_sauc = 0;
    bool ci_present = false;
    bool converged = false;
    bool boundary = false; // some free parameter pinned at its box bound
    std::size_t n_studies = 0;

    double se_hat() const;
    double sp_hat() const;
};

// Conditional log-likelihood at a given p: Reitsma term + sum log a - sum
// log b, with alpha_p re-solved inside every evaluation. alpha_hint warm
// starts the nested root solve; alpha_out reports the solved intercept.
double conditional_loglik(const BivariateParams& biv, const ContrastVector& contrast,
                          double beta, double p, const std::vector<StudySummary>& data,
                          double alpha_hint = 0.0, double* alpha_out = nullptr);

// Maximizes the conditional log-likelihood within the SaConfig boxes.
// Initial (mu, Omega) come from fit_reitsma unless init is supplied.
SaFit fit_sa(const std::vector<StudySummary>& data, const SaConfig& config,
             const std::optional<BivariateParams>& init = std::nullopt);

// One fit per p, warm-started from the previous entry (first from the
// Reitsma fit). Per-entry failures are recorded with converged = false.
std::vector<SaFit> sa_grid(const std::vector<StudySummary>& data,
                           const std::vector<double>& p_grid, const SaConfig& config,
                           bool warm_start = true);

} // namespace dtasa

#endif
