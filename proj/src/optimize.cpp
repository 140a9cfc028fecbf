#include "dtasa/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dtasa {

namespace {

constexpr double kBad = -1e300;

double safe_eval(const Objective& f, const std::vector<double>& x, int& evals) {
    ++evals;
    try {
        const double v = f(x);
        return std::isfinite(v) ? v : kBad;
    } catch (...) {
        return kBad;
    }
}

struct NmResult {
    std::vector<double> x;
    double value;
    bool converged;
};

NmResult nelder_mead(const Objective& f, const std::vector<double>& start, const Box& box,
                     const MaximizeOptions& opt, int& evals) {
    const std::size_t n = box.dim();
    std::vector<std::vector<double>> simplex;
    std::vector<double> fv;
    simplex.push_back(box.clip(start));
    for (std::size_t j = 0; j < n; ++j) {
        auto v = simplex[0];
        const double range = box.hi[j] - box.lo[j];
        double step = 0.05 * (range > 0 ? range : 1.0);
        if (v[j] + step > box.hi[j]) step = -step;
        v[j] += step;
        simplex.push_back(box.clip(v));
    }
    for (auto& v : simplex) fv.push_back(safe_eval(f, v, evals));

    auto order = [&]() {
        std::vector<std::size_t> idx(simplex.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] > fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (auto i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fv[i]);
        }
        simplex.swap(s2);
        fv.swap(f2);
    };
    order();

    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
        const double fbest = fv.front();
        const double fworst = fv.back();
        double size = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double span = 0.0;
            for (const auto& v : simplex) span = std::max(span, std::abs(v[j] - simplex[0][j]));
            size = std::max(size, span);
        }
        if (std::abs(fbest - fworst) <= opt.ftol_rel * (std::abs(fbest) + opt.ftol_rel) &&
            size <= opt.xtol) {
            converged = true;
            break;
        }

        // centroid of all but worst
        std::vector<double> cen(n, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) cen[j] += simplex[i][j];
        for (auto& c : cen) c /= static_cast<double>(n);

        auto point = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = cen[j] + coef * (cen[j] - simplex.back()[j]);
            return box.clip(p);
        };

        const auto xr = point(1.0);
        const double fr = safe_eval(f, xr, evals);
        if (fr > fv[0]) {
            const auto xe = point(2.0);
            const double fe = safe_eval(f, xe, evals);
            if (fe > fr) {
                simplex.back() = xe;
                fv.back() = fe;
            } else {
                simplex.back() = xr;
                fv.back() = fr;
            }
        } else if (fr > fv[fv.size() - 2]) {
            simplex.back() = xr;
            fv.back() = fr;
        } else {
            const auto xc = point(fr > fv.back() ? 0.5 : -0.5);
            const double fc = safe_eval(f, xc, evals);
            if (fc > std::max(fr, fv.back())) {
                simplex.back() = xc;
                fv.back() = fc;
            } else {
                // shrink toward best
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    simplex[i] = box.clip(simplex[i]);
                    fv[i] = safe_eval(f, simplex[i], evals);
                }
            }
        }
        order();
    }
    return {simplex.front(), fv.front(), converged};
}

std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x, const Box& box,
                                int& evals) {
    const std::size_t n = x.size();
    std::vector<double> g(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        auto xp = x, xm = x;
        xp[j] = std::min(box.hi[j], x[j] + h);
        xm[j] = std::max(box.lo[j], x[j] - h);
        const double denom = xp[j] - xm[j];
        if (denom <= 0) continue;
        g[j] = (safe_eval(f, xp, evals) - safe_eval(f, xm, evals)) / denom;
    }
    return g;
}

} // namespace

std::vector<double> Box::clip(std::vector<double> x) const {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], lo[j], hi[j]);
    return x;
}

bool Box::at_bound(const std::vector<double>& x, std::size_t j, double rel_tol) const {
    const double range = hi[j] - lo[j];
    const double tol = rel_tol * (range > 0 ? range : 1.0);
    return x[j] - lo[j] <= tol || hi[j] - x[j] <= tol;
}

MaximizeResult maximize(const Objective& f, const std::vector<double>& start, const Box& box,
                        const MaximizeOptions& opt) {
    int evals = 0;
    const std::size_t n = box.dim();

    NmResult best = nelder_mead(f, start, box, opt, evals);
    // deterministic perturbed restarts
    for (int r = 1; r <= opt.restarts; ++r) {
        auto s = best.x;
        for (std::size_t j = 0; j < n; ++j) {
            const double range = box.hi[j] - box.lo[j];
            const double sign = ((r + static_cast<int>(j)) % 2 == 0) ? 1.0 : -1.0;
            s[j] += sign * 0.02 * r * (range > 0 ? range : 1.0);
        }
        NmResult cand = nelder_mead(f, box.clip(s), box, opt, evals);
        if (cand.value > best.value) best = cand;
    }

    // box-projected gradient ascent with backtracking
    auto x = best.x;
    double fx = best.value;
    double step = 1e-2;
    for (int it = 0; it < opt.polish_iter; ++it) {
        const auto g = fd_gradient(f, x, box, evals);
        double gnorm = 0.0;
        for (double v : g) gnorm = std::max(gnorm, std::abs(v));
        if (gnorm < 1e-12) break;
        bool improved = false;
        for (int bt = 0; bt < 30; ++bt) {
            std::vector<double> xn(n);
            for (std::size_t j = 0; j < n; ++j) xn[j] = x[j] + step * g[j] / gnorm;
            xn = box.clip(xn);
            const double fn = safe_eval(f, xn, evals);
            if (fn > fx) {
                x = xn;
                fx = fn;
                improved = true;
                step *= 1.5;
                break;
            }
            step *= 0.5;
        }
        if (!improved || step < 1e-14) break;
    }

    MaximizeResult res;
    if (fx > best.value) {
        res.x = x;
        res.value = fx;
    } else {
        res.x = best.x;
        res.value = best.value;
    }
    res.converged = best.converged && res.value > kBad / 2;
    res.evaluations = evals;
    return res;
}

} // namespace dtasa
