#ifndef DTASA_REITSMA_HPP
#define DTASA_REITSMA_HPP

#include <vector>

#include "dtasa/params.hpp"
#include "dtasa/study.hpp"

namespace dtasa {

struct SrocPoint {
    double fpr = 0;
    double tpr = 0;
};

struct ReitsmaFit {
    BivariateParams params;
    double loglik = 0;
    bool converged = false;
};

// Log-likelihood of the marginal bivariate normal model with known
// within-study variances. Includes the -log(2*pi) constant per study.
double reitsma_loglik(const BivariateParams& params, const std::vector<StudySummary>& data);

// Analytic gradient in (mu1, mu2, tau1, tau2, rho).
std::vector<double> reitsma_loglik_grad(const BivariateParams& params,
                                        const std::vector<StudySummary>& data);

// Maximum-likelihood fit over the box mu in [-5,5]^2, tau in (0,3]^2,
// rho in [-0.999, 0.999].
ReitsmaFit fit_reitsma(const std::vector<StudySummary>& data);

// SROC value at a given false positive rate.
double sroc(const BivariateParams& params, double fpr);

// Area under the SROC over fpr in (0,1). Gauss-Legendre 64 nodes, doubled
// to 128 when the two estimates differ by more than 1e-7.
double sauc(const BivariateParams& params);

std::vector<SrocPoint> sroc_curve(const BivariateParams& params, int n_points = 201,
                                  double fpr_min = 0.005, double fpr_max = 0.995);

} // namespace dtasa

#endif
