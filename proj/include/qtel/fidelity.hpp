#pragma once

#include <cstdint>
#include <string>

#include "qtel/noise.hpp"
#include "qtel/teleport.hpp"

namespace qtel {

enum class Method { closed_form, quadrature, monte_carlo, process_matrix };

std::string method_name(Method m);

struct AverageFidelityResult {
    double value = 0.0;
    Method method = Method::closed_form;
    std::size_t samples_or_nodes = 0;
    double std_error = 0.0;  // populated by the Monte Carlo path only
};

struct OptimalChannel {
    double theta_opt = 0.0;  // shared by both pairs
    double fidelity = 0.0;
    bool degenerate = false;  // fidelity independent of theta (p_A = p_B = 1)
    double asymmetry = 0.0;   // |theta1* - theta2*| found by the full 2-D search
};

// Closed-form average fidelity of the damped Bell-like protocol:
// 1/5 + 1/5 * prod_k [1 + (2 pA pB - pA - pB) sin^2(theta_k)
//                      + sqrt((1-pA)(1-pB)) sin(2 theta_k)].
double avg_fidelity_closed(const ScenarioParams& s);

// Bell channel (theta = pi/4) with noise on both sides.
double avg_fidelity_bell_ab(double p_a, double p_b);

// Bell channel with noise on Bob's side only.
double avg_fidelity_bell_b(double p_b);

// Channel angle maximizing the average fidelity (principal arctan branch;
// pi/4 in the noiseless and fully-damped degenerate limits).
double theta_opt(double p_a, double p_b);

// Optimized Bell-like channel fidelities.
double avg_fidelity_belllike_opt_ab(double p_a, double p_b);
double avg_fidelity_belllike_opt_b(double p_b);

// Brute-force average over the six-angle input parametrization:
// Gauss-Legendre in each eta, uniform periodic nodes in each phi. The node
// minimums keep the rule exact for the trigonometric-polynomial integrand.
struct QuadratureSpec {
    std::size_t eta_nodes = 12;  // minimum 12
    std::size_t phi_nodes = 8;   // minimum 8
};
AverageFidelityResult avg_fidelity_quadrature(
    const ScenarioParams& s, const QuadratureSpec& spec = {},
    const CorrectionTable& corrections = CorrectionTable::standard());

// Mean simulated fidelity over n Haar-random inputs; deterministic given seed.
AverageFidelityResult avg_fidelity_monte_carlo(
    const ScenarioParams& s, std::size_t n, std::uint64_t seed,
    const CorrectionTable& corrections = CorrectionTable::standard());

// Average fidelity through the process matrix of the protocol map: teleports
// the 16 operator-basis elements, extracts the entanglement fidelity F_e, and
// returns (4 F_e + 1) / 5.
AverageFidelityResult avg_fidelity_process(
    const ScenarioParams& s, const CorrectionTable& corrections = CorrectionTable::standard());

// Maximizes the closed form over the full (theta1, theta2) square:
// 181x181 coarse grid, then local grid refinement to 1e-8.
OptimalChannel optimize_theta_numeric(double p_a, double p_b);

// Bisection root of avg_fidelity_bell_ab(p, p) - avg_fidelity_bell_b(p) on
// [lo, hi]; requires a sign change.
double find_crossing(double lo, double hi);

}  // namespace qtel
