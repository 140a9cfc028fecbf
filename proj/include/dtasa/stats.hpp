#ifndef DTASA_STATS_HPP
#define DTASA_STATS_HPP

#include <cmath>

// Scalar probability helpers: logit transforms, the standard normal
// distribution (CDF, tail-stable log-CDF, quantile).

namespace dtasa {

inline double logit(double p) { return std::log(p / (1.0 - p)); }

inline double inv_logit(double x) {
    // split to avoid overflow of exp for large |x|
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline double norm_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

namespace detail {

// Scaled complementary error function via Lentz-style continued fraction,
// accurate for z >= 4.
inline double erfcx_cf(double z) {
    double cf = 0.0;
    for (int k = 60; k >= 1; --k) {
        cf = (0.5 * k) / (z + cf);
    }
    static const double inv_sqrt_pi = 0.5641895835477562869;
    return inv_sqrt_pi / (z + cf);
}

} // namespace detail

// log Phi(x), stable deep into the lower tail.
inline double norm_logcdf(double x) {
    if (x >= -6.0) {
        return std::log(norm_cdf(x));
    }
    const double z = -x * 0.7071067811865475244; // z >= 4.24
    return -z * z + std::log(0.5 * detail::erfcx_cf(z));
}

// Inverse standard normal CDF: Acklam's rational approximation refined by
// one Halley step against norm_cdf.
double norm_quantile(double p);

} // namespace dtasa

#endif
