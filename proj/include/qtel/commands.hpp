#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qtel/fidelity.hpp"

namespace qtel {

inline constexpr std::uint64_t kDefaultSeed = 20240817ULL;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepScenario { bell_AB, bell_B, belllike_opt_AB, belllike_opt_B, custom };

SweepScenario parse_scenario(const std::string& name);

struct SweepConfig {
    SweepScenario scenario = SweepScenario::bell_AB;
    double theta1 = 0.0;  // custom scenario only
    double theta2 = 0.0;
    double p_start = 0.0;
    double p_end = 1.0;
    std::size_t steps = 2;
    Method method = Method::closed_form;
    std::uint64_t seed = kDefaultSeed;
    std::size_t mc_samples = 100000;
    std::string output_path;
};

struct VerifyOptions {
    bool quick = false;
    std::uint64_t seed = kDefaultSeed;
};

// 12-significant-digit, locale-independent number formatting for CSV output.
std::string format_number(double v);

// Runs the oracle-triangle and invariant suite; one PASS/FAIL line per check.
// Returns 0 when everything passes, 1 otherwise.
int run_verify(const VerifyOptions& opts, std::ostream& out);

// Curve data behind the two noise-strength figures (201 points each).
void write_figure_csv(int id, const std::string& path);

void write_sweep_csv(const SweepConfig& cfg);

// Analytic vs numeric channel optimization report.
int run_optimize(double p_a, double p_b, std::ostream& out);

}  // namespace qtel
