#include "qtel/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <vector>

#include "qtel/kernel.hpp"
#include "qtel/rng.hpp"

namespace qtel {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 0.5 * kPi;
constexpr double kQuarterPi = 0.25 * kPi;

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 rng(seed ^ (0xA24BAED4963EE407ULL * (salt + 1)));
    return rng.next();
}

ScenarioParams scenario_at(const SweepConfig& cfg, double p) {
    switch (cfg.scenario) {
        case SweepScenario::bell_AB: return {kQuarterPi, kQuarterPi, p, p};
        case SweepScenario::bell_B: return {kQuarterPi, kQuarterPi, 0.0, p};
        case SweepScenario::belllike_opt_AB: {
            const double t = theta_opt(p, p);
            return {t, t, p, p};
        }
        case SweepScenario::belllike_opt_B: {
            const double t = theta_opt(0.0, p);
            return {t, t, 0.0, p};
        }
        case SweepScenario::custom: return {cfg.theta1, cfg.theta2, p, p};
    }
    throw std::invalid_argument("unknown sweep scenario");
}

AverageFidelityResult evaluate(const SweepConfig& cfg, const ScenarioParams& s,
                               std::uint64_t row_seed) {
    switch (cfg.method) {
        case Method::closed_form:
            return {avg_fidelity_closed(s), Method::closed_form, 0, 0.0};
        case Method::quadrature: return avg_fidelity_quadrature(s);
        case Method::monte_carlo: return avg_fidelity_monte_carlo(s, cfg.mc_samples, row_seed);
        case Method::process_matrix: return avg_fidelity_process(s);
    }
    throw std::invalid_argument("unknown method");
}

struct CheckReport {
    bool all_passed = true;

    void report(std::ostream& out, const std::string& name, bool pass, const std::string& detail) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-58s %s  %s", name.c_str(), pass ? "PASS" : "FAIL",
                      detail.c_str());
        out << line << "\n";
        if (!pass) all_passed = false;
    }
};

std::string deviation_detail(const char* label, double value) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s = %.3g", label, value);
    return buf;
}

DensityMatrix random_density(SplitMix64& rng, std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t components = 1 + rng.next() % 4;
    std::vector<double> weights(components);
    double wsum = 0.0;
    for (auto& w : weights) {
        w = rng.next_unit();
        wsum += w;
    }
    ComplexMatrix rho(dim, dim);
    for (std::size_t k = 0; k < components; ++k) {
        const auto v = haar_vector(dim, rng);
        const double w = weights[k] / wsum;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                rho(i, j) += w * v[i] * std::conj(v[j]);
    }
    std::vector<std::string> labels;
    for (std::size_t q = 0; q < n_qubits; ++q) labels.push_back("q" + std::to_string(q));
    return DensityMatrix{rho, labels};
}

std::vector<double> grid_points(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

}  // namespace

SweepScenario parse_scenario(const std::string& name) {
    static const std::map<std::string, SweepScenario> table{
        {"bell_AB", SweepScenario::bell_AB},
        {"bell_B", SweepScenario::bell_B},
        {"belllike_opt_AB", SweepScenario::belllike_opt_AB},
        {"belllike_opt_B", SweepScenario::belllike_opt_B},
        {"custom", SweepScenario::custom},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown scenario '" + name + "'");
    return it->second;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_figure_csv(int id, const std::string& path) {
    if (id != 1 && id != 2) throw std::invalid_argument("figure id must be 1 or 2");

    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file '" + path + "'");

    constexpr int kPoints = 201;
    if (id == 1) {
        out << "p,F_B_bell,F_AB_bell,classical_limit\n";
        for (int i = 0; i < kPoints; ++i) {
            const double p = static_cast<double>(i) / (kPoints - 1);
            out << format_number(p) << ',' << format_number(avg_fidelity_bell_b(p)) << ','
                << format_number(avg_fidelity_bell_ab(p, p)) << ',' << format_number(0.4) << "\n";
        }
    } else {
        out << "p,F_B_bell,F_B_belllike_opt,F_AB_belllike_opt,classical_limit\n";
        for (int i = 0; i < kPoints; ++i) {
            const double p = static_cast<double>(i) / (kPoints - 1);
            out << format_number(p) << ',' << format_number(avg_fidelity_bell_b(p)) << ','
                << format_number(avg_fidelity_belllike_opt_b(p)) << ','
                << format_number(avg_fidelity_belllike_opt_ab(p, p)) << ','
                << format_number(0.4) << "\n";
        }
    }
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_sweep_csv(const SweepConfig& cfg) {
    if (cfg.steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
    if (!(cfg.p_start <= cfg.p_end)) throw std::invalid_argument("p_start must be <= p_end");
    if (!(cfg.p_start >= 0.0 && cfg.p_end <= 1.0))
        throw std::invalid_argument("sweep range must lie in [0, 1]");
    if (cfg.scenario == SweepScenario::custom) {
        if (!(cfg.theta1 >= 0.0 && cfg.theta1 <= kHalfPi && cfg.theta2 >= 0.0 &&
              cfg.theta2 <= kHalfPi))
            throw std::invalid_argument("custom scenario angles must lie in [0, pi/2]");
    }

    const std::size_t n = cfg.steps;
    std::vector<AverageFidelityResult> rows(n);

    auto compute_row = [&](std::size_t i) {
        const double p = cfg.p_start + (cfg.p_end - cfg.p_start) * static_cast<double>(i) /
                                           static_cast<double>(n - 1);
        rows[i] = evaluate(cfg, scenario_at(cfg, p), derived_seed(cfg.seed, i));
    };

    // Quadrature and Monte Carlo parallelize internally; the other methods
    // parallelize across sweep points. Rows are written in index order.
    if (cfg.method == Method::quadrature || cfg.method == Method::monte_carlo) {
        for (std::size_t i = 0; i < n; ++i) compute_row(i);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            compute_row(static_cast<std::size_t>(i));
    }

    std::ofstream out(cfg.output_path);
    if (!out) throw IoError("cannot open output file '" + cfg.output_path + "'");
    out << "p,fidelity,method,std_error\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double p = cfg.p_start + (cfg.p_end - cfg.p_start) * static_cast<double>(i) /
                                           static_cast<double>(n - 1);
        out << format_number(p) << ',' << format_number(rows[i].value) << ','
            << method_name(cfg.method) << ',';
        if (cfg.method == Method::monte_carlo) out << format_number(rows[i].std_error);
        out << "\n";
    }
    out.flush();
    if (!out) throw IoError("write failed for '" + cfg.output_path + "'");
}

int run_optimize(double p_a, double p_b, std::ostream& out) {
    if (!(p_a >= 0.0 && p_a <= 1.0) || !(p_b >= 0.0 && p_b <= 1.0))
        throw std::domain_error("noise strengths must lie in [0, 1]");

    const double analytic = theta_opt(p_a, p_b);
    const double analytic_f = avg_fidelity_belllike_opt_ab(p_a, p_b);
    const OptimalChannel numeric = optimize_theta_numeric(p_a, p_b);

    out << "p_A = " << format_number(p_a) << ", p_B = " << format_number(p_b) << "\n";
    out << "analytic theta_opt   = " << format_number(analytic) << " rad\n";
    out << "numeric  theta_opt   = " << format_number(numeric.theta_opt) << " rad\n";
    out << "analytic fidelity    = " << format_number(analytic_f) << "\n";
    out << "numeric  fidelity    = " << format_number(numeric.fidelity) << "\n";
    out << "theta deviation      = " << format_number(std::abs(numeric.theta_opt - analytic))
        << "\n";
    out << "fidelity deviation   = " << format_number(std::abs(numeric.fidelity - analytic_f))
        << "\n";
    if (numeric.degenerate)
        out << "note: fidelity is independent of theta at these strengths\n";
    if (numeric.asymmetry > 1e-6)
        out << "note: asymmetric maximum found, |theta1 - theta2| = "
            << format_number(numeric.asymmetry) << "\n";
    return 0;
}

int run_verify(const VerifyOptions& opts, std::ostream& out) {
    CheckReport report;
    SplitMix64 rng(derived_seed(opts.seed, 0xC0FFEE));

    // --- Kraus completeness -------------------------------------------------
    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double p = rng.next_unit();
            worst = std::max(worst, amplitude_damping_kraus(p).completeness_error());
        }
        report.report(out, "kraus completeness (100 random strengths)", worst < 1e-12,
                      deviation_detail("max |sum E+E - I|", worst));
    }

    // --- CPTP property suite ------------------------------------------------
    {
        const int cases = opts.quick ? 50 : 500;
        double worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0;
        for (int i = 0; i < cases; ++i) {
            const std::size_t n_qubits = 1 + rng.next() % 4;
            const DensityMatrix rho = random_density(rng, n_qubits);
            std::map<std::string, double> assignment;
            for (const auto& label : rho.qubit_order)
                if (rng.next() & 1u) assignment[label] = rng.next_unit();
            const DensityMatrix damped = apply_amplitude_damping(rho, assignment);
            worst_trace = std::max(worst_trace, std::abs(trace(damped.matrix).real() - 1.0));
            worst_herm = std::max(worst_herm, hermiticity_error(damped.matrix));
            worst_eig = std::min(worst_eig, min_eigenvalue(damped.matrix));
        }
        const bool pass = worst_trace < 1e-12 && worst_herm < 1e-12 && worst_eig >= -1e-10;
        char detail[160];
        std::snprintf(detail, sizeof(detail), "trace dev %.2g, herm dev %.2g, min eig %.2g",
                      worst_trace, worst_herm, worst_eig);
        report.report(out, "channel CPTP suite (random states)", pass, detail);
    }

    // --- Ideal teleportation ------------------------------------------------
    {
        const int cases = opts.quick ? 50 : 200;
        const DensityMatrix ideal = noisy_channel_state({kQuarterPi, kQuarterPi, 0.0, 0.0});
        std::vector<double> devs(cases);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < cases; ++i) {
            const auto amps = haar_state4(opts.seed, static_cast<std::uint64_t>(i));
            StateVector psi;
            psi.amplitudes.assign(amps.begin(), amps.end());
            devs[i] = std::abs(state_fidelity(psi, teleport(psi, ideal)) - 1.0);
        }
        const double worst = *std::max_element(devs.begin(), devs.end());
        report.report(out, "ideal teleportation (Haar inputs)", worst < 1e-10,
                      deviation_detail("max |f - 1|", worst));
    }

    // --- Outcome probabilities and zero-probability robustness ---------------
    {
        const int cases = opts.quick ? 10 : 40;
        double worst_sum = 0.0, worst_neg = 0.0;
        bool finite = true;
        for (int i = 0; i < cases; ++i) {
            ScenarioParams s{(i % 3 == 0) ? 0.0 : rng.next_unit() * kHalfPi,
                             rng.next_unit() * kHalfPi, rng.next_unit(), rng.next_unit()};
            const DensityMatrix channel = noisy_channel_state(s);
            const auto amps = haar_state4(opts.seed + 7, static_cast<std::uint64_t>(i));
            StateVector psi;
            psi.amplitudes.assign(amps.begin(), amps.end());
            const TeleportResult result = teleport_detailed(psi, channel);
            double sum = 0.0;
            for (const auto& o : result.outcomes) {
                sum += o.probability;
                worst_neg = std::min(worst_neg, o.probability);
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
            finite = finite && result.bob_state.matrix.all_finite();
        }
        const bool pass = worst_sum < 1e-12 && worst_neg >= -1e-12 && finite;
        char detail[160];
        std::snprintf(detail, sizeof(detail), "sum dev %.2g, min prob %.2g%s", worst_sum,
                      worst_neg, finite ? "" : ", NaN detected");
        report.report(out, "measurement outcome probabilities", pass, detail);
    }

    // --- Fast kernel against the dense reference ----------------------------
    {
        const int cases = opts.quick ? 10 : 40;
        double worst = 0.0;
        for (int i = 0; i < cases; ++i) {
            ScenarioParams s{rng.next_unit() * kHalfPi, rng.next_unit() * kHalfPi,
                             rng.next_unit(), rng.next_unit()};
            const DensityMatrix channel = noisy_channel_state(s);
            const FidelityKernel kernel(s);
            const auto amps = haar_state4(opts.seed + 13, static_cast<std::uint64_t>(i));
            StateVector psi;
            psi.amplitudes.assign(amps.begin(), amps.end());
            const double ref = state_fidelity(psi, teleport(psi, channel));
            worst = std::max(worst, std::abs(ref - kernel.fidelity(psi)));
        }
        report.report(out, "fast kernel vs dense reference", worst < 1e-12,
                      deviation_detail("max |dev|", worst));
    }

    // --- Oracle triangle on the scenario grid --------------------------------
    const std::vector<double> theta_grid =
        opts.quick ? std::vector<double>{0.0, kQuarterPi, kHalfPi}
                   : std::vector<double>{0.0, kPi / 8.0, kQuarterPi, 3.0 * kPi / 8.0, kHalfPi};
    const std::vector<double> p_grid = opts.quick ? std::vector<double>{0.0, 0.5, 1.0}
                                                  : std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<ScenarioParams> grid;
    for (double t1 : theta_grid)
        for (double t2 : theta_grid)
            for (double pa : p_grid)
                for (double pb : p_grid) grid.push_back({t1, t2, pa, pb});

    std::vector<double> closed_vals(grid.size()), quad_vals(grid.size()), proc_vals(grid.size());
    {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            closed_vals[i] = avg_fidelity_closed(grid[i]);
            quad_vals[i] = avg_fidelity_quadrature(grid[i]).value;  // parallel inside
        }
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i)
            proc_vals[static_cast<std::size_t>(i)] = avg_fidelity_process(grid[i]).value;

        double dev_cq = 0.0, dev_cp = 0.0, dev_qp = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            dev_cq = std::max(dev_cq, std::abs(closed_vals[i] - quad_vals[i]));
            dev_cp = std::max(dev_cp, std::abs(closed_vals[i] - proc_vals[i]));
            dev_qp = std::max(dev_qp, std::abs(quad_vals[i] - proc_vals[i]));
        }
        const bool pass = dev_cq < 1e-9 && dev_cp < 1e-9 && dev_qp < 1e-9;
        char detail[200];
        std::snprintf(detail, sizeof(detail),
                      "max |closed-quad| %.3g, |closed-proc| %.3g, |quad-proc| %.3g (%zu scenarios)",
                      dev_cq, dev_cp, dev_qp, grid.size());
        report.report(out, "oracle triangle (closed / quadrature / process)", pass, detail);
    }

    // --- Monte Carlo agreement on the same grid ------------------------------
    {
        const std::size_t samples = opts.quick ? 5000 : 20000;
        // Degenerate scenarios have zero sampling variance, so the 5-sigma band
        // gets an absolute floor at rounding level.
        double worst_excess = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto mc = avg_fidelity_monte_carlo(grid[i], samples, derived_seed(opts.seed, i));
            const double dev = std::abs(mc.value - closed_vals[i]);
            const double band = std::max(5.0 * mc.std_error, 1e-12);
            worst_excess = std::max(worst_excess, dev / band);
        }
        const auto a = avg_fidelity_monte_carlo(grid.front(), samples, opts.seed);
        const auto b = avg_fidelity_monte_carlo(grid.front(), samples, opts.seed);
        const bool deterministic = a.value == b.value && a.std_error == b.std_error;
        const bool pass = worst_excess < 1.0 && deterministic;
        char detail[160];
        std::snprintf(detail, sizeof(detail), "max dev %.2f of the 5-sigma band%s", worst_excess,
                      deterministic ? "" : ", non-deterministic");
        report.report(out, "monte carlo agreement (5-sigma)", pass, detail);
    }

    // --- Specialization chain -----------------------------------------------
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double pa = rng.next_unit();
            const double pb = rng.next_unit();
            worst = std::max(worst, std::abs(avg_fidelity_closed({kQuarterPi, kQuarterPi, pa, pb}) -
                                             avg_fidelity_bell_ab(pa, pb)));
            worst = std::max(worst, std::abs(avg_fidelity_bell_ab(0.0, pb) -
                                             avg_fidelity_bell_b(pb)));
            const double t = theta_opt(pa, pb);
            worst = std::max(worst, std::abs(avg_fidelity_closed({t, t, pa, pb}) -
                                             avg_fidelity_belllike_opt_ab(pa, pb)));
            worst = std::max(worst, std::abs(avg_fidelity_belllike_opt_ab(0.0, pb) -
                                             avg_fidelity_belllike_opt_b(pb)));
        }
        report.report(out, "closed-form specialization chain", worst < 1e-12,
                      deviation_detail("max |dev|", worst));
    }

    // --- Noise-swap symmetry -------------------------------------------------
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const ScenarioParams s{rng.next_unit() * kHalfPi, rng.next_unit() * kHalfPi,
                                   rng.next_unit(), rng.next_unit()};
            const ScenarioParams swapped{s.theta1, s.theta2, s.p_B, s.p_A};
            worst = std::max(worst,
                             std::abs(avg_fidelity_closed(s) - avg_fidelity_closed(swapped)));
        }
        report.report(out, "p_A/p_B exchange symmetry", worst < 1e-12,
                      deviation_detail("max |dev|", worst));
    }

    // --- Optimizer stationarity ----------------------------------------------
    {
        const int cases = opts.quick ? 5 : 20;
        double worst_theta = 0.0, worst_fid = 0.0, worst_grad = 0.0, worst_curv = -1.0;
        for (int i = 0; i < cases; ++i) {
            const double pa = rng.next_unit();
            const double pb = rng.next_unit();
            const double t = theta_opt(pa, pb);
            const OptimalChannel num = optimize_theta_numeric(pa, pb);
            worst_theta = std::max(worst_theta, std::abs(num.theta_opt - t));
            worst_fid = std::max(worst_fid,
                                 std::abs(num.fidelity - avg_fidelity_belllike_opt_ab(pa, pb)));
            const double h = 1e-4;
            auto f = [&](double th) { return avg_fidelity_closed({th, t, pa, pb}); };
            const double grad = (f(t + h) - f(t - h)) / (2.0 * h);
            const double curv = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
            worst_grad = std::max(worst_grad, std::abs(grad));
            worst_curv = std::max(worst_curv, curv);
        }
        const bool pass =
            worst_theta < 1e-4 && worst_fid < 1e-9 && worst_grad < 1e-6 && worst_curv < 0.0;
        char detail[200];
        std::snprintf(detail, sizeof(detail),
                      "theta dev %.2g, fid dev %.2g, |grad| %.2g, curvature %.2g", worst_theta,
                      worst_fid, worst_grad, worst_curv);
        report.report(out, "optimizer stationarity and agreement", pass, detail);
    }

    // --- Curve orderings and monotonicity ------------------------------------
    {
        const auto ps = grid_points(0.0, 1.0, 1001);
        bool ok = true;
        double prev_d = 2.0;
        for (const double p : ps) {
            const double a = avg_fidelity_bell_b(p);
            const double b = avg_fidelity_bell_ab(p, p);
            const double c = avg_fidelity_belllike_opt_b(p);
            const double d = avg_fidelity_belllike_opt_ab(p, p);
            ok = ok && c >= a - 1e-12;               // optimized beats Bell at p_A = 0
            ok = ok && b >= 0.4 - 1e-12;             // both-sides Bell stays above 2/5
            ok = ok && (p < 1.0 ? c > 0.4 : std::abs(c - 0.4) < 1e-12);
            ok = ok && d <= c + 1e-12;
            ok = ok && d <= prev_d + 1e-12;          // non-increasing
            prev_d = d;
        }
        report.report(out, "curve orderings on 1001-point grid", ok, ok ? "all orderings hold" : "violated");
    }

    // --- Closed-form range ----------------------------------------------------
    {
        bool ok = true;
        const auto thetas = grid_points(0.0, kHalfPi, 21);
        const auto ps = grid_points(0.0, 1.0, 21);
        for (double t1 : thetas)
            for (double t2 : thetas)
                for (double pa : ps)
                    for (double pb : ps) {
                        const double f = avg_fidelity_closed({t1, t2, pa, pb});
                        ok = ok && f >= 0.2 - 1e-9 && f <= 1.0 + 1e-9;
                    }
        report.report(out, "closed form bounded in [0.2, 1]", ok, ok ? "full box scan" : "violated");
    }

    // --- Crossover -------------------------------------------------------------
    {
        bool pass = true;
        std::string detail;
        try {
            const double p_star = find_crossing(0.7, 0.9);
            const bool below = avg_fidelity_bell_ab(0.2, 0.2) < avg_fidelity_bell_b(0.2);
            const bool above = avg_fidelity_bell_ab(0.9, 0.9) > avg_fidelity_bell_b(0.9);
            pass = p_star > 0.80 && p_star < 0.81 && below && above;
            detail = "p* = " + format_number(p_star);
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        report.report(out, "curve crossover location", pass, detail);
    }

    out << (report.all_passed ? "verification passed" : "verification FAILED") << "\n";
    return report.all_passed ? 0 : 1;
}

}  // namespace qtel
