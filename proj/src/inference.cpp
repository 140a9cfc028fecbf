#include "dtasa/inference.hpp"

#include <cmath>

#include "dtasa/errors.hpp"
#include "dtasa/stats.hpp"

namespace dtasa {

bool cholesky(std::vector<double>& a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (sum <= 0.0) return false;
                a[i * n + j] = std::sqrt(sum);
            } else {
                a[i * n + j] = sum / a[j * n + j];
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = 0.0;
    }
    return true;
}

std::vector<double> cholesky_solve(const std::vector<double>& chol, std::size_t n,
                                   std::vector<double> b) {
    // forward substitution L z = b
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= chol[i * n + k] * b[k];
        b[i] = sum / chol[i * n + i];
    }
    // back substitution L' x = z
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) sum -= chol[k * n + ii] * b[k];
        b[ii] = sum / chol[ii * n + ii];
    }
    return b;
}

std::vector<double> observed_information(const LoglikFn& f, const std::vector<double>& at) {
    const std::size_t n = at.size();
    std::vector<double> h(n);
    for (std::size_t j = 0; j < n; ++j) h[j] = std::max(1e-5, 1e-5 * std::abs(at[j]));

    std::vector<double> info(n * n, 0.0);
    const double f0 = f(at);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double second;
            if (i == j) {
                auto xp = at, xm = at;
                xp[i] += h[i];
                xm[i] -= h[i];
                second = (f(xp) - 2.0 * f0 + f(xm)) / (h[i] * h[i]);
            } else {
                auto xpp = at, xpm = at, xmp = at, xmm = at;
                xpp[i] += h[i]; xpp[j] += h[j];
                xpm[i] += h[i]; xpm[j] -= h[j];
                xmp[i] -= h[i]; xmp[j] += h[j];
                xmm[i] -= h[i]; xmm[j] -= h[j];
                second = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h[i] * h[j]);
            }
            info[i * n + j] = -second;
            info[j * n + i] = -second;
        }
    }

    auto test = info;
    if (!cholesky(test, n)) {
        throw NonInvertibleHessian("observed_information: matrix not positive definite");
    }
    return info;
}

CiResult sauc_ci(double sauc_hat, const std::vector<double>& grad,
                 const std::vector<double>& info, double level) {
    const std::size_t n = grad.size();
    auto chol = info;
    if (!cholesky(chol, n)) {
        throw NonInvertibleHessian("sauc_ci: information matrix not positive definite");
    }
    const auto solved = cholesky_solve(chol, n, grad);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += grad[i] * solved[i];
    const double se = var > 0.0 ? std::sqrt(var) : 0.0;

    CiResult r;
    r.estimate = sauc_hat;
    r.level = level;
    r.se_sauc = se;
    const double z = norm_quantile(0.5 + 0.5 * level);
    const double half = z * se / (sauc_hat * (1.0 - sauc_hat));
    r.lo = inv_logit(logit(sauc_hat) - half);
    r.hi = inv_logit(logit(sauc_hat) + half);
    return r;
}

} // namespace dtasa
