#ifndef DTASA_OPTIMIZE_HPP
#define DTASA_OPTIMIZE_HPP

#include <functional>
#include <vector>

namespace dtasa {

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const { return lo.size(); }
    std::vector<double> clip(std::vector<double> x) const;
    bool at_bound(const std::vector<double>& x, std::size_t j, double rel_tol = 1e-6) const;
};

using Objective = std::function<double(const std::vector<double>&)>;

struct MaximizeOptions {
    double ftol_rel = 1e-10;
    double xtol = 1e-8;
    int max_iter = 4000;
    int restarts = 3; // perturbed Nelder-Mead restarts beyond the initial start
    int polish_iter = 200;
};

struct MaximizeResult {
    std::vector<double> x;
    double value = 0;
    bool converged = false;
    int evaluations = 0;
};

// Box-constrained maximization: multi-start Nelder-Mead followed by a
// box-projected gradient ascent polish with finite-difference gradients.
// Objective evaluations that throw are treated as -inf.
MaximizeResult maximize(const Objective& f, const std::vector<double>& start,
                        const Box& box, const MaximizeOptions& opt = {});

} // namespace dtasa

#endif
