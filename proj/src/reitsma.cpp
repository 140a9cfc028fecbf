#include "dtasa/reitsma.hpp"

#include <algorithm>
#include <cmath>

#include "dtasa/errors.hpp"
#include "dtasa/optimize.hpp"
#include "dtasa/quadrature.hpp"
#include "dtasa/stats.hpp"

namespace dtasa {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

Box reitsma_box() {
    // mu in [-5,5], tau in (0,3] (lower bound kept strictly positive),
    // rho in [-0.999, 0.999] so Omega stays invertible.
    return Box{{-5, -5, 1e-6, 1e-6, -0.999}, {5, 5, 3, 3, 0.999}};
}

BivariateParams unpack(const std::vector<double>& x) {
    return BivariateParams{x[0], x[1], x[2], x[3], x[4]};
}

} // namespace

double reitsma_loglik(const BivariateParams& p, const std::vector<StudySummary>& data) {
    const double o = p.tau12();
    const double t1sq = p.tau1 * p.tau1;
    const double t2sq = p.tau2 * p.tau2;
    double ll = 0.0;
    for (const auto& d : data) {
        const double v11 = d.s1_sq + t1sq;
        const double v22 = d.s2_sq + t2sq;
        const double det = v11 * v22 - o * o;
        if (det <= 0.0) throw SingularCovariance("reitsma_loglik: |Sigma_i + Omega| <= 0");
        const double r1 = d.y1 - p.mu1;
        const double r2 = d.y2 - p.mu2;
        const double quad = (r1 * r1 * v22 - 2.0 * r1 * r2 * o + r2 * r2 * v11) / det;
        ll += -0.5 * quad - 0.5 * std::log(det) - kLog2Pi;
    }
    return ll;
}

std::vector<double> reitsma_loglik_grad(const BivariateParams& p,
                                        const std::vector<StudySummary>& data) {
    const double o = p.tau12();
    const double t1sq = p.tau1 * p.tau1;
    const double t2sq = p.tau2 * p.tau2;
    std::vector<double> g(5, 0.0);
    for (const auto& d : data) {
        const double v11 = d.s1_sq + t1sq;
        const double v22 = d.s2_sq + t2sq;
        const double det = v11 * v22 - o * o;
        if (det <= 0.0) throw SingularCovariance("reitsma_loglik_grad: |Sigma_i + Omega| <= 0");
        // V^{-1}
        const double i11 = v22 / det;
        const double i22 = v11 / det;
        const double i12 = -o / det;
        const double r1 = d.y1 - p.mu1;
        const double r2 = d.y2 - p.mu2;
        // q = V^{-1} r
        const double q1 = i11 * r1 + i12 * r2;
        const double q2 = i12 * r1 + i22 * r2;
        g[0] += q1;
        g[1] += q2;
        // dll/dtheta = 0.5 q' dV q - 0.5 tr(V^{-1} dV) for each variance parameter
        auto add = [&](double d11, double d12, double d22, int idx) {
            const double quad = q1 * q1 * d11 + 2.0 * q1 * q2 * d12 + q2 * q2 * d22;
            const double tr = i11 * d11 + 2.0 * i12 * d12 + i22 * d22;
            g[idx] += 0.5 * quad - 0.5 * tr;
        };
        add(2.0 * p.tau1, p.rho * p.tau2, 0.0, 2);
        add(0.0, p.rho * p.tau1, 2.0 * p.tau2, 3);
        add(0.0, p.tau1 * p.tau2, 0.0, 4);
    }
    return g;
}

ReitsmaFit fit_reitsma(const std::vector<StudySummary>& data) {
    if (data.empty()) throw OptimizationFailed("fit_reitsma: no studies");

    const std::size_t n = data.size();
    double m1 = 0, m2 = 0;
    for (const auto& d : data) {
        m1 += d.y1;
        m2 += d.y2;
    }
    m1 /= static_cast<double>(n);
    m2 /= static_cast<double>(n);
    double v1 = 0, v2 = 0, cv = 0;
    for (const auto& d : data) {
        v1 += (d.y1 - m1) * (d.y1 - m1);
        v2 += (d.y2 - m2) * (d.y2 - m2);
        cv += (d.y1 - m1) * (d.y2 - m2);
    }
    if (n > 1) {
        v1 /= static_cast<double>(n - 1);
        v2 /= static_cast<double>(n - 1);
        cv /= static_cast<double>(n - 1);
    }
    const double sd1 = std::clamp(std::sqrt(v1), 0.05, 3.0);
    const double sd2 = std::clamp(std::sqrt(v2), 0.05, 3.0);
    double r0 = 0.0;
    if (v1 > 0 && v2 > 0) r0 = std::clamp(cv / std::sqrt(v1 * v2), -0.95, 0.95);

    const Box box = reitsma_box();
    const std::vector<double> start = box.clip({m1, m2, sd1, sd2, r0});
    Objective obj = [&](const std::vector<double>& x) { return reitsma_loglik(unpack(x), data); };
    const MaximizeResult res = maximize(obj, start, box);
    if (!res.converged && res.value <= -1e299) {
        throw OptimizationFailed("fit_reitsma: optimizer could not improve from any start");
    }
    return ReitsmaFit{unpack(res.x), res.value, res.converged};
}

double sroc(const BivariateParams& p, double fpr) {
    if (!(fpr > 0.0 && fpr < 1.0)) throw DomainError("sroc: fpr must be in (0,1)");
    const double slope = p.tau12() / (p.tau2 * p.tau2);
    return inv_logit(p.mu1 - slope * (logit(fpr) + p.mu2));
}

double sauc(const BivariateParams& p) {
    auto integrate = [&](int n) {
        const QuadRule& q = gauss_legendre_01(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += q.weights[i] * sroc(p, q.nodes[i]);
        return s;
    };
    const double v64 = integrate(64);
    const double v128 = integrate(128);
    if (std::abs(v128 - v64) > 1e-7) {
        // integrand is smooth; one more doubling settles the rare hard case
        return integrate(256);
    }
    return v128;
}

std::vector<SrocPoint> sroc_curve(const BivariateParams& params, int n_points, double fpr_min,
                                  double fpr_max) {
    std::vector<SrocPoint> pts;
    pts.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double x =
            fpr_min + (fpr_max - fpr_min) * static_cast<double>(i) / (n_points - 1);
        pts.push_back({x, sroc(params, x)});
    }
    return pts;
}

} // namespace dtasa
