#include <clocale>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qtel/commands.hpp"

namespace {

qtel::Method parse_method(const std::string& name) {
    static const std::map<std::string, qtel::Method> table{
        {"closed_form", qtel::Method::closed_form},
        {"quadrature", qtel::Method::quadrature},
        {"monte_carlo", qtel::Method::monte_carlo},
        {"process_matrix", qtel::Method::process_matrix},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown method '" + name + "'");
    return it->second;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");

    CLI::App app{"Two-qubit teleportation over amplitude-damped Bell-like channels"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "Run the oracle and invariant suite");
    bool quick = false;
    std::uint64_t verify_seed = qtel::kDefaultSeed;
    verify->add_flag("--quick", quick, "Smaller grids and sample counts");
    verify->add_option("--seed", verify_seed, "Seed for randomized checks")->envname("QTEL_SEED");

    auto* figure = app.add_subcommand("figure", "Emit curve data for the noise-strength figures");
    int figure_id = 1;
    std::string figure_out;
    figure->add_option("--id", figure_id, "Figure id (1 or 2)")->required();
    figure->add_option("--out", figure_out, "Output CSV path")->required();

    auto* sweep = app.add_subcommand("sweep", "Average fidelity over a noise-strength range");
    std::string scenario_name = "bell_AB";
    std::string method_name = "closed_form";
    std::string sweep_out;
    double theta1 = 0.0, theta2 = 0.0, p_start = 0.0, p_end = 1.0;
    std::size_t steps = 201, samples = 100000;
    std::uint64_t sweep_seed = qtel::kDefaultSeed;
    sweep->add_option("--scenario", scenario_name,
                      "bell_AB | bell_B | belllike_opt_AB | belllike_opt_B | custom");
    sweep->add_option("--theta1", theta1, "First channel angle (custom scenario)");
    sweep->add_option("--theta2", theta2, "Second channel angle (custom scenario)");
    sweep->add_option("--p-start", p_start, "Range start")->required();
    sweep->add_option("--p-end", p_end, "Range end")->required();
    sweep->add_option("--steps", steps, "Number of points")->required();
    sweep->add_option("--method", method_name,
                      "closed_form | quadrature | monte_carlo | process_matrix");
    sweep->add_option("--seed", sweep_seed, "Monte Carlo seed")->envname("QTEL_SEED");
    sweep->add_option("--samples", samples, "Monte Carlo samples per point");
    sweep->add_option("--out", sweep_out, "Output CSV path")->required();

    auto* optimize = app.add_subcommand("optimize", "Optimal channel angle for given strengths");
    double p_a = 0.0, p_b = 0.0;
    optimize->add_option("--pa", p_a, "Alice-side noise strength")->required();
    optimize->add_option("--pb", p_b, "Bob-side noise strength")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return qtel::run_verify({quick, verify_seed}, std::cout);
        if (*figure) {
            qtel::write_figure_csv(figure_id, figure_out);
            return 0;
        }
        if (*sweep) {
            qtel::SweepConfig cfg;
            cfg.scenario = qtel::parse_scenario(scenario_name);
            cfg.theta1 = theta1;
            cfg.theta2 = theta2;
            cfg.p_start = p_start;
            cfg.p_end = p_end;
            cfg.steps = steps;
            cfg.method = parse_method(method_name);
            cfg.seed = sweep_seed;
            cfg.mc_samples = samples;
            cfg.output_path = sweep_out;
            qtel::write_sweep_csv(cfg);
            return 0;
        }
        if (*optimize) return qtel::run_optimize(p_a, p_b, std::cout);
    } catch (const qtel::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
