#ifndef DTASA_INFERENCE_HPP
#define DTASA_INFERENCE_HPP

#include <functional>
#include <vector>

namespace dtasa {

struct CiResult {
    double estimate = 0;
    double lo = 0;
    double hi = 0;
    double level = 0.95;
    double se_sauc = 0;
};

using LoglikFn = std::function<double(const std::vector<double>&)>;

// Negative Hessian of the log-likelihood by central finite differences
// (step h_j = max(1e-5, 1e-5*|theta_j|)), symmetrized as (H + H')/2.
// Returned row-major, dim x dim. Throws NonInvertibleHessian when the
// result is not positive definite.
std::vector<double> observed_information(const LoglikFn& loglik, const std::vector<double>& at);

// Delta-method CI for SAUC on the logit scale:
//   se = sqrt(g' I^{-1} g),
//   interval = logit^{-1}( logit(sauc) +- z * se / (sauc (1 - sauc)) ).
// grad is the gradient of sauc(.) with respect to the same free parameters
// as the information matrix.
CiResult sauc_ci(double sauc_hat, const std::vector<double>& grad,
                 const std::vector<double>& info, double level = 0.95);

// Cholesky factor (lower) of a symmetric positive definite matrix, row-major.
// Returns false when the matrix is not positive definite.
bool cholesky(std::vector<double>& a, std::size_t n);

// Solves A x = b given the Cholesky factor produced above.
std::vector<double> cholesky_solve(const std::vector<double>& chol, std::size_t n,
                                   std::vector<double> b);

} // namespace dtasa

#endif
