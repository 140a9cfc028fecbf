#include "dtasa/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dtasa/errors.hpp"
#include "dtasa/reitsma.hpp"
#include "dtasa/rng.hpp"
#include "dtasa/sa.hpp"
#include "dtasa/selection.hpp"

namespace dtasa {

std::string to_string(ContrastVariant v) {
    switch (v) {
        case ContrastVariant::Dor: return "dor";
        case ContrastVariant::Sensitivity: return "se";
        case ContrastVariant::Specificity: return "sp";
    }
    return "?";
}

ContrastVector Scenario::contrast() const {
    switch (variant) {
        case ContrastVariant::Dor: return ContrastVector::dor();
        case ContrastVariant::Sensitivity: return ContrastVector::sensitivity();
        case ContrastVariant::Specificity: return ContrastVector::specificity();
    }
    return ContrastVector::dor();
}

namespace {

struct ScenarioRow {
    int id;
    double sauc, mu1, mu2, tau1, tau2, rho, beta;
    double alpha_dor, alpha_se, alpha_sp;
};

// Scenarios 7-12 use tau1 = tau2 = sqrt(0.5); the printed 0.707 is rounded.
const double kTauHalf = 0.70710678118654752440;

const ScenarioRow kRows[] = {
    {1, 0.564, 0.000, 1.735, 1, 2, -0.3, 0.5, -0.165, 0.891, -0.429},
    {2, 0.620, 0.000, 1.735, 1, 2, -0.6, 0.5, -0.251, 0.894, -0.433},
    {3, 0.828, 1.386, 1.386, 1, 2, -0.3, 0.5, -0.766, -0.570, -0.111},
    {4, 0.846, 1.386, 1.386, 1, 2, -0.6, 0.5, -0.848, -0.573, -0.118},
    {5, 0.892, 2.197, -0.405, 1, 2, -0.3, 0.5, -0.198, -1.269, 1.744},
    {6, 0.877, 2.197, -0.405, 1, 2, -0.6, 0.5, -0.284, -1.269, 1.733},
    {7, 0.620, 0.000, 1.735, kTauHalf, kTauHalf, -0.3, 0.5, -0.423, 0.794, -0.993},
    {8, 0.702, 0.000, 1.735, kTauHalf, kTauHalf, -0.6, 0.5, -0.461, 0.795, -0.996},
    {9, 0.846, 1.386, 1.386, kTauHalf, kTauHalf, -0.3, 0.5, -1.003, -0.698, -0.697},
    {10, 0.864, 1.386, 1.386, kTauHalf, kTauHalf, -0.6, 0.5, -1.032, -0.701, -0.698},
    {11, 0.877, 2.197, -0.405, kTauHalf, kTauHalf, -0.3, 0.5, -0.457, -1.362, 1.342},
    {12, 0.835, 2.197, -0.405, kTauHalf, kTauHalf, -0.6, 0.5, -0.492, -1.362, 1.335},
};

} // namespace

std::vector<int> scenario_ids() {
    std::vector<int> ids;
    for (const auto& r : kRows) ids.push_back(r.id);
    return ids;
}

Scenario scenario_catalog(int id, ContrastVariant variant) {
    for (const auto& r : kRows) {
        if (r.id != id) continue;
        Scenario s;
        s.id = r.id;
        s.mu1 = r.mu1;
        s.mu2 = r.mu2;
        s.tau1 = r.tau1;
        s.tau2 = r.tau2;
        s.rho = r.rho;
        s.beta = r.beta;
        s.variant = variant;
        s.sauc_true = r.sauc;
        switch (variant) {
            case ContrastVariant::Dor: s.alpha = r.alpha_dor; break;
            case ContrastVariant::Sensitivity: s.alpha = r.alpha_se; break;
            case ContrastVariant::Specificity: s.alpha = r.alpha_sp; break;
        }
        if (std::abs(sauc(s.biv()) - s.sauc_true) > 1e-3) {
            throw DomainError("scenario catalog: tabulated SAUC inconsistent");
        }
        return s;
    }
    throw DomainError("unknown scenario id " + std::to_string(id));
}

std::vector<PopulationStudy> generate_population(const Scenario& scenario, int s_population,
                                                 std::uint64_t seed) {
    CounterRng rng(seed);
    const BivariateParams biv = scenario.biv();
    const ContrastVector c = scenario.contrast();

    // Cholesky of Omega done per study after adding Sigma_i
    std::vector<PopulationStudy> out;
    out.reserve(s_population);
    for (int i = 0; i < s_population; ++i) {
        double s1 = rng.normal(0.5, 0.5);
        while (s1 == 0.0) s1 = rng.normal(0.5, 0.5);
        double s2 = rng.normal(0.5, 0.5);
        while (s2 == 0.0) s2 = rng.normal(0.5, 0.5);
        PopulationStudy ps;
        ps.summary.s1_sq = s1 * s1;
        ps.summary.s2_sq = s2 * s2;

        const double v11 = ps.summary.s1_sq + biv.tau1 * biv.tau1;
        const double v22 = ps.summary.s2_sq + biv.tau2 * biv.tau2;
        const double v12 = biv.tau12();
        const double l11 = std::sqrt(v11);
        const double l21 = v12 / l11;
        const double l22 = std::sqrt(v22 - l21 * l21);
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        ps.summary.y1 = biv.mu1 + l11 * z1;
        ps.summary.y2 = biv.mu2 + l21 * z1 + l22 * z2;

        const double t = t_statistic(ps.summary, c);
        ps.p_select = select_prob_a(t, scenario.beta, scenario.alpha);
        out.push_back(ps);
    }
    return out;
}

SelectionOutcome apply_selection(const std::vector<PopulationStudy>& population,
                                 std::uint64_t seed) {
    if (population.empty()) throw DomainError("apply_selection: empty population");
    CounterRng rng(seed);
    SelectionOutcome out;
    double sum_p = 0.0;
    for (const auto& ps : population) {
        sum_p += ps.p_select;
        if (rng.bernoulli(ps.p_select)) out.selected.push_back(ps.summary);
    }
    out.p_hat = sum_p / static_cast<double>(population.size());
    if (out.selected.empty()) throw EmptySelection("apply_selection: no study selected");
    return out;
}

std::string to_string(SimMethod m) {
    switch (m) {
        case SimMethod::ReitsmaP: return "reitsma_p";
        case SimMethod::ReitsmaO: return "reitsma_o";
        case SimMethod::ProposedEstimated: return "proposed_estimated";
        case SimMethod::ProposedCorrect: return "proposed_correct";
        case SimMethod::ProposedMis: return "proposed_misspecified";
    }
    return "?";
}

SimMethod sim_method_from_string(const std::string& name) {
    if (name == "reitsma_p") return SimMethod::ReitsmaP;
    if (name == "reitsma_o") return SimMethod::ReitsmaO;
    if (name == "proposed_estimated") return SimMethod::ProposedEstimated;
    if (name == "proposed_correct") return SimMethod::ProposedCorrect;
    if (name == "proposed_misspecified") return SimMethod::ProposedMis;
    throw DomainError("unknown method '" + name + "'");
}

double quantile_type7(std::vector<double> v, double prob) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * prob;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - lo) * (v[hi] - v[lo]);
}

namespace {

// Misspecified contrast per the tabulated rows: when the truth is the DOR
// contrast the misspecification fixes c1 = 1; otherwise it fixes c1 = c2.
ContrastMode misspecified_mode(ContrastVariant truth) {
    if (truth == ContrastVariant::Dor) return ContrastMode::fixed(1.0);
    return ContrastMode::fixed(0.7071067811865475244);
}

ContrastMode correct_mode(ContrastVariant truth) {
    switch (truth) {
        case ContrastVariant::Dor: return ContrastMode::fixed(0.7071067811865475244);
        case ContrastVariant::Sensitivity: return ContrastMode::fixed(1.0);
        case ContrastVariant::Specificity: return ContrastMode::fixed(0.0);
    }
    return ContrastMode::fixed(0.7071067811865475244);
}

struct RepResult {
    // one optional SAUC per method, in the order of the methods vector
    std::vector<double> sauc;
    std::vector<bool> ok;
};

RepResult run_replication(const Scenario& scenario, const std::vector<SimMethod>& methods,
                          const SimOptions& opt, int rep) {
    RepResult res;
    res.sauc.assign(methods.size(), 0.0);
    res.ok.assign(methods.size(), false);

    const std::uint64_t variant_tag =
        static_cast<std::uint64_t>(scenario.id) * 4 + static_cast<std::uint64_t>(scenario.variant);
    CounterRng pop_seed = CounterRng::stream(opt.base_seed, variant_tag, rep, 0);
    CounterRng sel_seed = CounterRng::stream(opt.base_seed, variant_tag, rep, 1);

    std::vector<PopulationStudy> population;
    SelectionOutcome sel;
    try {
        population = generate_population(scenario, opt.s_population, pop_seed.next());
        sel = apply_selection(population, sel_seed.next());
    } catch (const std::exception&) {
        return res; // empty selection: every method counts as non-convergent
    }

    std::vector<StudySummary> pop_summaries;
    pop_summaries.reserve(population.size());
    for (const auto& ps : population) pop_summaries.push_back(ps.summary);

    for (std::size_t m = 0; m < methods.size(); ++m) {
        try {
            switch (methods[m]) {
                case SimMethod::ReitsmaP: {
                    const ReitsmaFit f = fit_reitsma(pop_summaries);
                    if (f.converged) {
                        res.sauc[m] = sauc(f.params);
                        res.ok[m] = true;
                    }
                    break;
                }
                case SimMethod::ReitsmaO: {
                    const ReitsmaFit f = fit_reitsma(sel.selected);
                    if (f.converged) {
                        res.sauc[m] = sauc(f.params);
                        res.ok[m] = true;
                    }
                    break;
                }
                default: {
                    SaConfig cfg;
                    cfg.p = std::min(sel.p_hat, 1.0);
                    if (methods[m] == SimMethod::ProposedEstimated) {
                        cfg.contrast_mode = ContrastMode::estimated();
                    } else if (methods[m] == SimMethod::ProposedCorrect) {
                        cfg.contrast_mode = correct_mode(scenario.variant);
                    } else {
                        cfg.contrast_mode = misspecified_mode(scenario.variant);
                    }
                    const SaFit f = fit_sa(sel.selected, cfg);
                    if (f.converged) {
                        res.sauc[m] = f.sauc;
                        res.ok[m] = true;
                    }
                    break;
                }
            }
        } catch (const std::exception&) {
            // counted against the convergence rate
        }
    }
    return res;
}

} // namespace

std::vector<SimSummary> run_study(const Scenario& scenario, const std::vector<SimMethod>& methods,
                                  const SimOptions& options) {
    std::vector<RepResult> results(options.reps);

    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (int r = 0; r < options.reps; ++r) {
            results[r] = run_replication(scenario, methods, options, r);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                for (;;) {
                    const int r = next.fetch_add(1);
                    if (r >= options.reps) break;
                    results[r] = run_replication(scenario, methods, options, r);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<SimSummary> out;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        SimSummary s;
        s.scenario_id = scenario.id;
        s.method = methods[m];
        s.s_population = options.s_population;
        std::vector<double> vals;
        for (const auto& r : results) {
            if (r.ok[m]) vals.push_back(r.sauc[m]);
        }
        s.n_converged = static_cast<int>(vals.size());
        s.convergence_rate = 100.0 * vals.size() / static_cast<double>(options.reps);
        if (!vals.empty()) {
            s.median = quantile_type7(vals, 0.5);
            s.q1 = quantile_type7(vals, 0.25);
            s.q3 = quantile_type7(vals, 0.75);
        }
        out.push_back(s);
    }
    return out;
}

} // namespace dtasa
