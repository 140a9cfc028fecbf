#ifndef DTASA_PARAMS_HPP
#define DTASA_PARAMS_HPP

#include <cmath>

#include "dtasa/errors.hpp"

namespace dtasa {

// Parameters of the bivariate normal random-effects model.
struct BivariateParams {
    double mu1 = 0;  // mean logit sensitivity
    double mu2 = 0;  // mean logit specificity
    double tau1 = 1; // between-study SD of logit sensitivity, > 0
    double tau2 = 1; // between-study SD of logit specificity, > 0
    double rho = 0;  // correlation, in [-1, 1]

    double tau12() const { return rho * tau1 * tau2; }

    bool valid() const {
        return tau1 > 0 && tau2 > 0 && rho >= -1.0 && rho <= 1.0 &&
               std::isfinite(mu1) && std::isfinite(mu2);
    }
};

// Unit-norm contrast on (logit se, logit sp). Parameterized by c1 in [0, 1];
// c2 = sqrt(1 - c1^2) so the norm and sign constraints hold by construction.
class ContrastVector {
public:
    static ContrastVector from_c1(double c1) {
        if (c1 < 0.0 || c1 > 1.0) throw DomainError("contrast c1 must be in [0, 1]");
        return ContrastVector(c1, std::sqrt(std::max(0.0, 1.0 - c1 * c1)));
    }
    static ContrastVector dor() { return ContrastVector(0.7071067811865475244, 0.7071067811865475244); }
    static ContrastVector sensitivity() { return ContrastVector(1.0, 0.0); }
    static ContrastVector specificity() { return ContrastVector(0.0, 1.0); }

    double c1() const { return c1_; }
    double c2() const { return c2_; }

private:
    ContrastVector(double c1, double c2) : c1_(c1), c2_(c2) {}
    double c1_;
    double c2_;
};

// Probit selection function coefficients.
struct SelectionParams {
    ContrastVector contrast = ContrastVector::dor();
    double beta = 0;  // slope, >= 0
    double alpha = 0; // intercept; +inf encodes p = 1 (everything selected)
};

} // namespace dtasa

#endif
