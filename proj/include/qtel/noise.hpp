#pragma once

#include <map>
#include <string>

#include "qtel/densemath.hpp"

namespace qtel {

// Kraus operators of one noise channel; completeness sum E†E = I must hold.
struct KrausSet {
    std::vector<ComplexMatrix> operators;
    double strength = 0.0;

    // max entrywise deviation of sum E†E from the identity
    double completeness_error() const;
};

// Channel angles (radians in [0, pi/2]) and per-side damping strengths in [0, 1].
struct ScenarioParams {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double p_A = 0.0;
    double p_B = 0.0;

    void validate() const;  // throws std::domain_error on out-of-range fields
};

// Single-qubit amplitude damping: decay |1> -> |0> with probability p.
KrausSet amplitude_damping_kraus(double p);

// Pure 16x16 state (cos t1 |00> + sin t1 |11>) x (cos t2 |00> + sin t2 |11>)
// with qubit order (A1, B1, A2, B2).
DensityMatrix bell_like_channel_state(double theta1, double theta2);

// Operator-sum application of independent per-qubit amplitude damping.
// assignment maps qubit labels to noise strengths; unassigned qubits are untouched.
DensityMatrix apply_amplitude_damping(const DensityMatrix& rho,
                                      const std::map<std::string, double>& assignment);

// Damped channel state: p_A acts on A1 and A2, p_B on B1 and B2.
DensityMatrix noisy_channel_state(const ScenarioParams& s);

}  // namespace qtel
