#ifndef DTASA_SELECTION_HPP
#define DTASA_SELECTION_HPP

#include <vector>

#include "dtasa/params.hpp"
#include "dtasa/study.hpp"

namespace dtasa {

// Within-study variance pair, the only part of a summary the marginal
// selection probability depends on.
struct VariancePair {
    double s1_sq = 0;
    double s2_sq = 0;
};

// t = c'y / sqrt(c' Sigma c)
double t_statistic(const StudySummary& summary, const ContrastVector& contrast);

// a(t) = Phi(beta * t + alpha)
double select_prob_a(double t, double beta, double alpha);

// b(Sigma) = Phi{ (beta c'mu / sqrt(c'Sigma c) + alpha)
//                 / sqrt(1 + beta^2 (1 + c'Omega c / c'Sigma c)) }
double marginal_prob_b(const VariancePair& var, const BivariateParams& biv,
                       const SelectionParams& sel);

// Argument of Phi in b(Sigma); the conditional likelihood needs it in
// log-CDF form for tail stability.
double marginal_prob_b_arg(const VariancePair& var, const BivariateParams& biv,
                           const ContrastVector& c, double beta, double alpha);

// Solves N / sum_i b(Sigma_i; alpha)^{-1} = p for alpha. Returns +inf for
// p = 1 (callers treat a == b == 1). Throws BracketingFailed when no root
// exists in [-50, 50].
double solve_alpha_p(double p, const std::vector<VariancePair>& data_vars,
                     const BivariateParams& biv, const ContrastVector& contrast, double beta,
                     double hint = 0.0);

std::vector<VariancePair> variances_of(const std::vector<StudySummary>& data);

} // namespace dtasa

#endif
