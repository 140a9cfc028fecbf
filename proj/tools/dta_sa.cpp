// dta-sa: meta-analysis of diagnostic test accuracy with a
// publication-bias sensitivity analysis.
//
// Subcommands: fit, sa, simulate, sroc. Exit codes: 0 ok, 2 input/parse
// error, 3 optimization failure, 4 simulation with zero converged
// replications.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtasa/csv.hpp"
#include "dtasa/errors.hpp"
#include "dtasa/reitsma.hpp"
#include "dtasa/sa.hpp"
#include "dtasa/selection.hpp"
#include "dtasa/simulation.hpp"
#include "dtasa/stats.hpp"
#include "dtasa/svg.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace dtasa;

namespace {

constexpr const char* kVersion = "0.1.0";

int g_sig_digits = 6;

// round to the configured number of significant digits so serialized
// numbers are stable and compact
double out_num(double v) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", g_sig_digits, v);
    return std::strtod(buf, nullptr);
}

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", g_sig_digits, v);
    return buf;
}

int thread_cap() {
    if (const char* env = std::getenv("DTA_SA_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void write_manifest(const fs::path& outdir, const std::string& command,
                    const std::string& input, const json& options, std::uint64_t seed) {
    json m;
    m["command"] = command;
    m["input"] = input;
    m["output_dir"] = outdir.string();
    m["options"] = options;
    m["version"] = kVersion;
    m["seed"] = seed;
    std::ofstream out(outdir / "manifest.json");
    out << m.dump(2) << '\n';
}

json fit_record(const SaFit& f) {
    json r;
    r["p"] = out_num(f.p);
    r["mu1"] = out_num(f.biv.mu1);
    r["mu2"] = out_num(f.biv.mu2);
    r["tau1"] = out_num(f.biv.tau1);
    r["tau2"] = out_num(f.biv.tau2);
    r["rho"] = out_num(f.biv.rho);
    r["c1"] = out_num(f.sel.contrast.c1());
    r["c2"] = out_num(f.sel.contrast.c2());
    r["beta"] = out_num(f.sel.beta);
    if (std::isfinite(f.sel.alpha)) {
        r["alpha"] = out_num(f.sel.alpha);
    } else {
        r["alpha"] = nullptr; // p = 1: selection inactive
    }
    r["loglik"] = out_num(f.loglik);
    r["sauc"] = out_num(f.sauc);
    if (f.ci_present) {
        r["sauc_lo"] = out_num(f.sauc_lo);
        r["sauc_hi"] = out_num(f.sauc_hi);
    } else {
        r["sauc_lo"] = nullptr;
        r["sauc_hi"] = nullptr;
    }
    r["se_hat"] = out_num(f.se_hat());
    r["sp_hat"] = out_num(f.sp_hat());
    r["converged"] = f.converged;
    return r;
}

ContrastMode parse_contrast(const std::string& s) {
    if (s == "estimate") return ContrastMode::estimated();
    if (s == "dor") return ContrastMode::fixed(0.7071067811865475244);
    if (s == "se") return ContrastMode::fixed(1.0);
    if (s == "sp") return ContrastMode::fixed(0.0);
    if (s.rfind("c1=", 0) == 0) {
        const double v = std::strtod(s.c_str() + 3, nullptr);
        if (v < 0.0 || v > 1.0) throw CLI::ValidationError("--contrast", "c1 must be in [0,1]");
        return ContrastMode::fixed(v);
    }
    throw CLI::ValidationError("--contrast", "expected estimate|dor|se|sp|c1=<v>");
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> grid;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const double p = std::strtod(tok.c_str(), nullptr);
        if (!(p > 0.0 && p <= 1.0)) {
            throw CLI::ValidationError("--p-grid", "values must be in (0,1]");
        }
        grid.push_back(p);
    }
    if (grid.empty()) throw CLI::ValidationError("--p-grid", "empty grid");
    return grid;
}

void write_sroc_csv(const fs::path& path, const BivariateParams& params, int grid_points) {
    std::ofstream out(path);
    out << "fpr,tpr\n";
    for (const auto& pt : sroc_curve(params, grid_points)) {
        out << fmt_num(pt.fpr) << ',' << fmt_num(pt.tpr) << '\n';
    }
}

// ---- fit ----------------------------------------------------------------

int cmd_fit(const std::string& input, const std::string& outdir_s, double level,
            int grid_points) {
    const auto studies = read_studies_csv_file(input);
    const auto data = summarize_all(studies);

    SaConfig cfg;
    cfg.p = 1.0;
    cfg.level = level;
    const SaFit fit = fit_sa(data, cfg);
    if (!fit.converged) throw OptimizationFailed("fit: optimizer did not converge");

    const fs::path outdir(outdir_s);
    fs::create_directories(outdir);
    {
        json r;
        r["mu1"] = out_num(fit.biv.mu1);
        r["mu2"] = out_num(fit.biv.mu2);
        r["tau1"] = out_num(fit.biv.tau1);
        r["tau2"] = out_num(fit.biv.tau2);
        r["rho"] = out_num(fit.biv.rho);
        r["loglik"] = out_num(fit.loglik);
        r["sauc"] = out_num(fit.sauc);
        r["sauc_lo"] = fit.ci_present ? json(out_num(fit.sauc_lo)) : json(nullptr);
        r["sauc_hi"] = fit.ci_present ? json(out_num(fit.sauc_hi)) : json(nullptr);
        r["level"] = level;
        r["se_hat"] = out_num(fit.se_hat());
        r["sp_hat"] = out_num(fit.sp_hat());
        r["n_studies"] = fit.n_studies;
        std::ofstream out(outdir / "reitsma.json");
        out << r.dump(2) << '\n';
    }
    write_sroc_csv(outdir / "sroc.csv", fit.biv, grid_points);
    json opts;
    opts["level"] = level;
    opts["grid"] = grid_points;
    write_manifest(outdir, "fit", input, opts, 0);
    return 0;
}

// ---- sa -----------------------------------------------------------------

void write_sa_svg(const fs::path& outdir, const std::vector<StudySummary>& data,
                  const std::vector<SaFit>& fits) {
    static const char* colors[] = {"#000000", "#d62728", "#2ca02c", "#1f77b4", "#9467bd",
                                   "#8c564b"};
    {
        SvgPlot plot(0, 1, 0, 1, 520, 520, "FPR", "TPR");
        std::vector<double> sx, sy;
        for (const auto& d : data) {
            sx.push_back(1.0 - inv_logit(d.y2));
            sy.push_back(inv_logit(d.y1));
        }
        plot.circles(sx, sy, "#555555");
        std::vector<double> tx, ty;
        int ci = 0;
        for (const auto& f : fits) {
            if (!f.converged) continue;
            const auto curve = sroc_curve(f.biv);
            std::vector<double> xs, ys;
            for (const auto& pt : curve) {
                xs.push_back(pt.fpr);
                ys.push_back(pt.tpr);
            }
            const std::string color = colors[ci % 6];
            plot.polyline(xs, ys, color);
            tx.push_back(1.0 - f.sp_hat());
            ty.push_back(f.se_hat());
            plot.label(0.62, 0.30 - 0.05 * ci, "p=" + fmt_num(f.p), color);
            ++ci;
        }
        plot.polyline(tx, ty, "#888888", 1.0, "4,3");
        plot.diamonds(tx, ty, "#000000");
        plot.save((outdir / "sroc.svg").string());
    }
    {
        SvgPlot plot(-4, 10, 0, 1, 520, 360, "t", "P(select)");
        int ci = 0;
        for (const auto& f : fits) {
            if (!f.converged || !std::isfinite(f.sel.alpha)) continue;
            std::vector<double> xs, ys, tscores;
            for (int i = 0; i <= 200; ++i) {
                const double t = -4.0 + 14.0 * i / 200.0;
                xs.push_back(t);
                ys.push_back(select_prob_a(t, f.sel.beta, f.sel.alpha));
            }
            for (const auto& d : data) tscores.push_back(t_statistic(d, f.sel.contrast));
            const std::string color = colors[ci % 6];
            plot.polyline(xs, ys, color);
            plot.rug(tscores, color);
            plot.label(7.0, 0.35 - 0.07 * ci, "p=" + fmt_num(f.p), color);
            ++ci;
        }
        plot.save((outdir / "selection.svg").string());
    }
}

int cmd_sa(const std::string& input, const std::string& outdir_s, const std::string& p_grid_s,
           const std::string& contrast_s, double beta_max, double level, bool svg,
           int grid_points) {
    const auto studies = read_studies_csv_file(input);
    const auto data = summarize_all(studies);
    const auto p_grid = parse_grid(p_grid_s);

    SaConfig cfg;
    cfg.contrast_mode = parse_contrast(contrast_s);
    cfg.beta_max = beta_max;
    cfg.level = level;
    const auto fits = sa_grid(data, p_grid, cfg);

    const fs::path outdir(outdir_s);
    fs::create_directories(outdir);
    {
        json arr = json::array();
        for (const auto& f : fits) arr.push_back(fit_record(f));
        std::ofstream out(outdir / "sa.json");
        out << arr.dump(2) << '\n';
    }
    {
        std::ofstream out(outdir / "sroc_by_p.csv");
        out << "p,fpr,tpr\n";
        for (const auto& f : fits) {
            if (!f.converged) continue;
            for (const auto& pt : sroc_curve(f.biv, grid_points)) {
                out << fmt_num(f.p) << ',' << fmt_num(pt.fpr) << ',' << fmt_num(pt.tpr) << '\n';
            }
        }
    }
    {
        std::ofstream out(outdir / "trajectory.csv");
        out << "p,fpr,tpr\n";
        for (const auto& f : fits) {
            if (!f.converged) continue;
            out << fmt_num(f.p) << ',' << fmt_num(1.0 - f.sp_hat()) << ','
                << fmt_num(f.se_hat()) << '\n';
        }
    }
    {
        // implied number of unpublished studies at each p: N(1-p)/p
        std::ofstream out(outdir / "unpublished.csv");
        out << "p,implied_unpublished\n";
        const double n = static_cast<double>(data.size());
        for (const auto& f : fits) {
            out << fmt_num(f.p) << ','
                << static_cast<long>(std::lround(n * (1.0 - f.p) / f.p)) << '\n';
        }
    }
    if (svg) write_sa_svg(outdir, data, fits);

    json opts;
    opts["p_grid"] = p_grid_s;
    opts["contrast"] = contrast_s;
    opts["beta_max"] = beta_max;
    opts["level"] = level;
    opts["svg"] = svg;
    write_manifest(outdir, "sa", input, opts, 0);

    bool any = false;
    for (const auto& f : fits) any = any || f.converged;
    return any ? 0 : 3;
}

// ---- simulate -------------------------------------------------------------

int cmd_simulate(int scenario_id, const std::string& variant_s, int s_population, int reps,
                 std::uint64_t seed, const std::string& methods_s, const std::string& outdir_s) {
    ContrastVariant variant = ContrastVariant::Dor;
    if (variant_s == "se") variant = ContrastVariant::Sensitivity;
    else if (variant_s == "sp") variant = ContrastVariant::Specificity;
    else if (variant_s != "dor") {
        std::cerr << "unknown contrast variant '" << variant_s << "' (dor|se|sp)\n";
        return 2;
    }

    Scenario scenario;
    try {
        scenario = scenario_catalog(scenario_id, variant);
    } catch (const DomainError&) {
        std::cerr << "unknown scenario id " << scenario_id << "; available:";
        for (int id : scenario_ids()) std::cerr << ' ' << id;
        std::cerr << '\n';
        return 2;
    }

    std::vector<SimMethod> methods;
    {
        std::stringstream ss(methods_s);
        std::string tok;
        while (std::getline(ss, tok, ',')) methods.push_back(sim_method_from_string(tok));
    }

    SimOptions opt;
    opt.s_population = s_population;
    opt.reps = reps;
    opt.base_seed = seed;
    opt.threads = thread_cap();
    const auto summaries = run_study(scenario, methods, opt);

    const fs::path outdir(outdir_s);
    fs::create_directories(outdir);
    {
        std::ofstream out(outdir / "simulation.csv");
        out << "scenario,method,S,median,q1,q3,cr\n";
        for (const auto& s : summaries) {
            out << s.scenario_id << ',' << to_string(s.method) << ',' << s.s_population << ','
                << fmt_num(s.median) << ',' << fmt_num(s.q1) << ',' << fmt_num(s.q3) << ','
                << fmt_num(s.convergence_rate) << '\n';
        }
    }
    json opts;
    opts["scenario"] = scenario_id;
    opts["contrast"] = variant_s;
    opts["S"] = s_population;
    opts["reps"] = reps;
    opts["methods"] = methods_s;
    write_manifest(outdir, "simulate", "", opts, seed);

    int total_converged = 0;
    for (const auto& s : summaries) total_converged += s.n_converged;
    return total_converged > 0 ? 0 : 4;
}

// ---- sroc -----------------------------------------------------------------

int cmd_sroc(double mu1, double mu2, double tau1, double tau2, double rho,
             const std::string& outdir_s, int grid_points) {
    const BivariateParams params{mu1, mu2, tau1, tau2, rho};
    if (!params.valid()) {
        std::cerr << "invalid parameters: need tau > 0 and rho in [-1, 1]\n";
        return 2;
    }
    const fs::path outdir(outdir_s);
    fs::create_directories(outdir);
    write_sroc_csv(outdir / "sroc.csv", params, grid_points);
    std::cout << "sauc " << fmt_num(sauc(params)) << '\n';
    json opts;
    opts["mu1"] = mu1;
    opts["mu2"] = mu2;
    opts["tau1"] = tau1;
    opts["tau2"] = tau2;
    opts["rho"] = rho;
    opts["grid"] = grid_points;
    write_manifest(outdir, "sroc", "", opts, 0);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diagnostic test accuracy meta-analysis with publication-bias sensitivity "
                 "analysis"};
    app.require_subcommand(1);
    bool full_precision = false;
    app.add_flag("--full-precision", full_precision, "serialize numbers with 17 digits");

    // fit
    auto* fit = app.add_subcommand("fit", "fit the bivariate model without selection");
    std::string fit_in, fit_out = "out";
    double fit_level = 0.95;
    int fit_grid = 201;
    fit->add_option("-i,--input", fit_in, "study CSV (id,tp,fn,tn,fp)")->required();
    fit->add_option("-o,--out", fit_out, "output directory");
    fit->add_option("--level", fit_level, "confidence level")->check(CLI::Range(0.5, 0.9999));
    fit->add_option("--grid", fit_grid, "SROC grid points")->check(CLI::Range(2, 100000));

    // sa
    auto* sa = app.add_subcommand("sa", "sensitivity analysis over a p grid");
    std::string sa_in, sa_out = "out", sa_grid_s = "1,0.8,0.6,0.4", sa_contrast = "estimate";
    double sa_beta_max = 2.0, sa_level = 0.95;
    bool sa_svg = false;
    int sa_grid_points = 201;
    sa->add_option("-i,--input", sa_in, "study CSV (id,tp,fn,tn,fp)")->required();
    sa->add_option("-o,--out", sa_out, "output directory");
    sa->add_option("--p-grid", sa_grid_s, "comma-separated p values in (0,1]");
    sa->add_option("--contrast", sa_contrast, "estimate|dor|se|sp|c1=<v>");
    sa->add_option("--beta-max", sa_beta_max, "upper bound for the selection slope");
    sa->add_option("--level", sa_level, "confidence level")->check(CLI::Range(0.5, 0.9999));
    sa->add_flag("--svg", sa_svg, "emit SROC and selection-function SVG plots");
    sa->add_option("--grid", sa_grid_points, "SROC grid points");

    // simulate
    auto* sim = app.add_subcommand("simulate", "replication study for a catalog scenario");
    int sim_scenario = 3, sim_s = 200, sim_reps = 200;
    std::uint64_t sim_seed = 1;
    std::string sim_variant = "dor", sim_out = "out";
    std::string sim_methods =
        "reitsma_p,reitsma_o,proposed_estimated,proposed_correct,proposed_misspecified";
    sim->add_option("--scenario", sim_scenario, "scenario id (1-12)");
    sim->add_option("--contrast", sim_variant, "true selection contrast: dor|se|sp");
    sim->add_option("--S", sim_s, "population size")->check(CLI::Range(1, 1000000));
    sim->add_option("--reps", sim_reps, "replications")->check(CLI::Range(1, 1000000));
    sim->add_option("--seed", sim_seed, "base seed");
    sim->add_option("--methods", sim_methods, "comma-separated method list");
    sim->add_option("-o,--out", sim_out, "output directory");

    // sroc
    auto* sroc_cmd = app.add_subcommand("sroc", "emit an SROC curve from given parameters");
    double sr_mu1 = 0, sr_mu2 = 0, sr_tau1 = 1, sr_tau2 = 1, sr_rho = 0;
    std::string sr_out = "out";
    int sr_grid = 201;
    sroc_cmd->add_option("--mu1", sr_mu1)->required();
    sroc_cmd->add_option("--mu2", sr_mu2)->required();
    sroc_cmd->add_option("--tau1", sr_tau1)->required();
    sroc_cmd->add_option("--tau2", sr_tau2)->required();
    sroc_cmd->add_option("--rho", sr_rho)->required();
    sroc_cmd->add_option("-o,--out", sr_out, "output directory");
    sroc_cmd->add_option("--grid", sr_grid, "SROC grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    g_sig_digits = full_precision ? 17 : 6;

    try {
        if (*fit) return cmd_fit(fit_in, fit_out, fit_level, fit_grid);
        if (*sa) {
            return cmd_sa(sa_in, sa_out, sa_grid_s, sa_contrast, sa_beta_max, sa_level, sa_svg,
                          sa_grid_points);
        }
        if (*sim) {
            return cmd_simulate(sim_scenario, sim_variant, sim_s, sim_reps, sim_seed,
                                sim_methods, sim_out);
        }
        if (*sroc_cmd) return cmd_sroc(sr_mu1, sr_mu2, sr_tau1, sr_tau2, sr_rho, sr_out, sr_grid);
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const OptimizationFailed& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
