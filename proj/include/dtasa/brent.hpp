#ifndef DTASA_BRENT_HPP
#define DTASA_BRENT_HPP

#include <cmath>
#include <functional>

#include "dtasa/errors.hpp"

namespace dtasa {

// Brent's method on a bracketing interval [a, b] with f(a) * f(b) <= 0.
template <class F>
double brent_root(F&& f, double a, double b, double xtol = 1e-13, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw BracketingFailed("brent_root: interval does not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (xm > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
        }
    }
    return b;
}

// Expands [lo, hi] geometrically around a hint until f changes sign, then
// runs Brent. Throws BracketingFailed when no sign change exists within
// [limit_lo, limit_hi].
template <class F>
double bracketed_root(F&& f, double hint, double limit_lo, double limit_hi,
                      double xtol = 1e-13) {
    double half = 1.0;
    double lo = std::max(limit_lo, hint - half);
    double hi = std::min(limit_hi, hint + half);
    double flo = f(lo);
    double fhi = f(hi);
    while (flo * fhi > 0.0) {
        if (lo <= limit_lo && hi >= limit_hi) {
            throw BracketingFailed("bracketed_root: no sign change within limits");
        }
        half *= 2.0;
        lo = std::max(limit_lo, hint - half);
        hi = std::min(limit_hi, hint + half);
        flo = f(lo);
        fhi = f(hi);
    }
    return brent_root(f, lo, hi, xtol);
}

} // namespace dtasa

#endif
