#include "dtasa/sa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dtasa/errors.hpp"
#include "dtasa/inference.hpp"
#include "dtasa/optimize.hpp"
#include "dtasa/stats.hpp"

namespace dtasa {

double SaFit::se_hat() const { return inv_logit(biv.mu1); }
double SaFit::sp_hat() const { return inv_logit(biv.mu2); }

double conditional_loglik(const BivariateParams& biv, const ContrastVector& contrast,
                          double beta, double p, const std::vector<StudySummary>& data,
                          double alpha_hint, double* alpha_out) {
    const double base = reitsma_loglik(biv, data);
    if (p >= 1.0) {
        if (alpha_out) *alpha_out = std::numeric_limits<double>::infinity();
        return base;
    }
    const auto vars = variances_of(data);
    const double alpha = solve_alpha_p(p, vars, biv, contrast, beta, alpha_hint);
    if (alpha_out) *alpha_out = alpha;

    double log_a = 0.0, log_b = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        log_a += norm_logcdf(beta * t_statistic(data[i], contrast) + alpha);
        log_b += norm_logcdf(marginal_prob_b_arg(vars[i], biv, contrast, beta, alpha));
    }
    return base + log_a - log_b;
}

namespace {

struct Packing {
    bool with_c1; // 7 free params when the contrast is estimated, else 6
    double fixed_c1;

    std::size_t dim() const { return with_c1 ? 7 : 6; }

    BivariateParams biv(const std::vector<double>& x) const {
        return BivariateParams{x[0], x[1], x[2], x[3], x[4]};
    }
    double beta(const std::vector<double>& x) const { return x[5]; }
    ContrastVector contrast(const std::vector<double>& x) const {
        return ContrastVector::from_c1(with_c1 ? x[6] : fixed_c1);
    }
};

Box sa_box(const SaConfig& cfg, bool with_c1) {
    Box box{{-cfg.mu_abs_bound, -cfg.mu_abs_bound, 1e-6, 1e-6, -0.999, cfg.beta_min},
            {cfg.mu_abs_bound, cfg.mu_abs_bound, cfg.tau_max, cfg.tau_max, 0.999, cfg.beta_max}};
    if (with_c1) {
        box.lo.push_back(0.0);
        box.hi.push_back(1.0);
    }
    return box;
}

// Delta-method CI over the free, non-boundary parameters. Coordinates
// pinned at a box bound are excluded from the information matrix; the CI is
// then conditional on the boundary.
void attach_ci(SaFit& fit, const std::vector<double>& x_opt, const Packing& pack,
               const Box& box, double p, const std::vector<StudySummary>& data,
               double level, double alpha_hint) {
    std::vector<std::size_t> free_idx;
    for (std::size_t j = 0; j < x_opt.size(); ++j) {
        if (!box.at_bound(x_opt, j)) free_idx.push_back(j);
    }
    fit.boundary = free_idx.size() != x_opt.size();
    if (free_idx.empty()) return;

    auto expand = [&](const std::vector<double>& sub) {
        auto full = x_opt;
        for (std::size_t k = 0; k < free_idx.size(); ++k) full[free_idx[k]] = sub[k];
        return full;
    };
    LoglikFn ll = [&](const std::vector<double>& sub) {
        const auto full = expand(sub);
        return conditional_loglik(pack.biv(full), pack.contrast(full), pack.beta(full), p, data,
                                  alpha_hint);
    };
    std::vector<double> at;
    at.reserve(free_idx.size());
    for (auto j : free_idx) at.push_back(x_opt[j]);

    try {
        const auto info = observed_information(ll, at);
        // gradient of sauc w.r.t. the free parameters (only the bivariate
        // block contributes)
        std::vector<double> g(free_idx.size(), 0.0);
        for (std::size_t k = 0; k < free_idx.size(); ++k) {
            const std::size_t j = free_idx[k];
            if (j > 4) continue;
            const double h = std::max(1e-6, 1e-6 * std::abs(x_opt[j]));
            auto xp = x_opt, xm = x_opt;
            xp[j] += h;
            xm[j] -= h;
            g[k] = (sauc(pack.biv(xp)) - sauc(pack.biv(xm))) / (2.0 * h);
        }
        const CiResult ci = sauc_ci(fit.sauc, g, info, level);
        fit.sauc_lo = ci.lo;
        fit.sauc_hi = ci.hi;
        fit.se_sauc = ci.se_sauc;
        fit.ci_present = true;
    } catch (const NonInvertibleHessian&) {
        fit.ci_present = false; // fit still returned, CI downgraded to absent
    }
}

SaFit fit_sa_p1(const std::vector<StudySummary>& data, const SaConfig& cfg) {
    const ReitsmaFit rf = fit_reitsma(data);
    SaFit fit;
    fit.biv = rf.params;
    fit.p = 1.0;
    fit.loglik = rf.loglik;
    fit.converged = rf.converged;
    fit.n_studies = data.size();
    fit.sel.beta = cfg.initial_beta;
    fit.sel.alpha = std::numeric_limits<double>::infinity();
    fit.sel.contrast = ContrastVector::from_c1(
        cfg.contrast_mode.estimate ? cfg.initial_c1 : cfg.contrast_mode.fixed_c1);
    fit.sauc = sauc(fit.biv);

    // CI from the Reitsma information (selection terms vanish at p = 1)
    const Packing pack{false, fit.sel.contrast.c1()};
    Box box = sa_box(cfg, false);
    box.lo.resize(5);
    box.hi.resize(5);
    const std::vector<double> x_opt{fit.biv.mu1, fit.biv.mu2, fit.biv.tau1, fit.biv.tau2,
                                    fit.biv.rho};
    attach_ci(fit, x_opt, pack, box, 1.0, data, cfg.level, 0.0);
    return fit;
}

} // namespace

SaFit fit_sa(const std::vector<StudySummary>& data, const SaConfig& config,
             const std::optional<BivariateParams>& init) {
    if (!(config.p > 0.0 && config.p <= 1.0)) throw DomainError("fit_sa: p must be in (0, 1]");
    if (data.empty()) throw OptimizationFailed("fit_sa: no studies");

    // p = 1 degenerates exactly to the Reitsma model; share its code path.
    if (config.p >= 1.0) return fit_sa_p1(data, config);

    BivariateParams start_biv;
    if (init) {
        start_biv = *init;
    } else {
        start_biv = fit_reitsma(data).params;
    }

    const Packing pack{config.contrast_mode.estimate, config.contrast_mode.fixed_c1};
    const Box box = sa_box(config, pack.with_c1);

    std::vector<double> start{start_biv.mu1, start_biv.mu2, start_biv.tau1, start_biv.tau2,
                              start_biv.rho, config.initial_beta};
    if (pack.with_c1) start.push_back(config.initial_c1);

    // warm-start cache for the nested alpha root solve
    double alpha_hint = 0.0;
    Objective obj = [&](const std::vector<double>& x) {
        double alpha = alpha_hint;
        const double ll = conditional_loglik(pack.biv(x), pack.contrast(x), pack.beta(x),
                                             config.p, data, alpha_hint, &alpha);
        if (std::isfinite(alpha)) alpha_hint = alpha;
        return ll;
    };

    const MaximizeResult res = maximize(obj, box.clip(start), box);
    if (res.value <= -1e299) {
        throw OptimizationFailed("fit_sa: likelihood not evaluable anywhere near the start");
    }

    SaFit fit;
    fit.p = config.p;
    fit.n_studies = data.size();
    fit.biv = pack.biv(res.x);
    fit.sel.contrast = pack.contrast(res.x);
    fit.sel.beta = pack.beta(res.x);
    fit.loglik = conditional_loglik(fit.biv, fit.sel.contrast, fit.sel.beta, config.p, data,
                                    alpha_hint, &fit.sel.alpha);
    fit.converged = res.converged;
    fit.sauc = sauc(fit.biv);
    attach_ci(fit, res.x, pack, box, config.p, data, config.level, fit.sel.alpha);
    return fit;
}

std::vector<SaFit> sa_grid(const std::vector<StudySummary>& data,
                           const std::vector<double>& p_grid, const SaConfig& config,
                           bool warm_start) {
    std::vector<SaFit> fits;
    fits.reserve(p_grid.size());
    std::optional<BivariateParams> carry;
    SaConfig cfg = config;
    for (double p : p_grid) {
        cfg.p = p;
        try {
            const SaFit fit = fit_sa(data, cfg, warm_start ? carry : std::nullopt);
            if (warm_start && fit.converged) {
                carry = fit.biv;
                cfg.initial_beta = std::isfinite(fit.sel.alpha) ? fit.sel.beta : cfg.initial_beta;
                if (config.contrast_mode.estimate) cfg.initial_c1 = fit.sel.contrast.c1();
            }
            fits.push_back(fit);
        } catch (const std::exception&) {
            SaFit failed;
            failed.p = p;
            failed.n_studies = data.size();
            failed.converged = false;
            fits.push_back(failed);
        }
    }
    return fits;
}

} // namespace dtasa
