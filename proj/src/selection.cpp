#include "dtasa/selection.hpp"

#include <cmath>
#include <limits>

#include "dtasa/brent.hpp"
#include "dtasa/errors.hpp"
#include "dtasa/stats.hpp"

namespace dtasa {

double t_statistic(const StudySummary& d, const ContrastVector& c) {
    const double num = c.c1() * d.y1 + c.c2() * d.y2;
    const double den = std::sqrt(c.c1() * c.c1() * d.s1_sq + c.c2() * c.c2() * d.s2_sq);
    return num / den;
}

double select_prob_a(double t, double beta, double alpha) {
    return norm_cdf(beta * t + alpha);
}

// Argument of Phi in b(Sigma), reused by the conditional likelihood through
// its log-CDF form.
double marginal_prob_b_arg(const VariancePair& var, const BivariateParams& biv,
                           const ContrastVector& c, double beta, double alpha) {
    const double c1 = c.c1(), c2 = c.c2();
    const double csc = c1 * c1 * var.s1_sq + c2 * c2 * var.s2_sq;
    const double cmu = c1 * biv.mu1 + c2 * biv.mu2;
    const double com = c1 * c1 * biv.tau1 * biv.tau1 + 2.0 * c1 * c2 * biv.tau12() +
                       c2 * c2 * biv.tau2 * biv.tau2;
    const double num = beta * cmu / std::sqrt(csc) + alpha;
    const double den = std::sqrt(1.0 + beta * beta * (1.0 + com / csc));
    return num / den;
}

double marginal_prob_b(const VariancePair& var, const BivariateParams& biv,
                       const SelectionParams& sel) {
    if (std::isinf(sel.alpha) && sel.alpha > 0) return 1.0;
    return norm_cdf(marginal_prob_b_arg(var, biv, sel.contrast, sel.beta, sel.alpha));
}

std::vector<VariancePair> variances_of(const std::vector<StudySummary>& data) {
    std::vector<VariancePair> v;
    v.reserve(data.size());
    for (const auto& d : data) v.push_back({d.s1_sq, d.s2_sq});
    return v;
}

double solve_alpha_p(double p, const std::vector<VariancePair>& data_vars,
                     const BivariateParams& biv, const ContrastVector& contrast, double beta,
                     double hint) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("solve_alpha_p: p must be in (0, 1]");
    if (data_vars.empty()) throw DomainError("solve_alpha_p: no studies");
    if (p == 1.0) return std::numeric_limits<double>::infinity();

    const double n = static_cast<double>(data_vars.size());
    // g(alpha) = N / sum b^{-1} - p, strictly increasing in alpha.
    auto g = [&](double alpha) {
        double inv_sum = 0.0;
        for (const auto& v : data_vars) {
            const double b = norm_cdf(marginal_prob_b_arg(v, biv, contrast, beta, alpha));
            if (b <= 0.0) return -p; // harmonic mean collapses to 0
            inv_sum += 1.0 / b;
        }
        return n / inv_sum - p;
    };
    const double alpha = bracketed_root(g, hint, -50.0, 50.0, 1e-13);
    return alpha;
}

} // namespace dtasa
