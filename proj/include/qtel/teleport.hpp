#pragma once

#include <array>

#include "qtel/densemath.hpp"

namespace qtel {

// Bell basis order used everywhere: (|00>+|11>)/sqrt2, (|00>-|11>)/sqrt2,
// (|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2.
enum class BellIndex : int { phi_plus = 0, phi_minus = 1, psi_plus = 2, psi_minus = 3 };

struct MeasurementOutcome {
    BellIndex pair1;
    BellIndex pair2;
    double probability;
};

// Six angles parametrizing a two-qubit pure state:
// amplitudes (cos e3, sin e3 cos e2 * e^{i f1}, sin e3 sin e2 cos e1 * e^{i f2},
//             sin e3 sin e2 sin e1 * e^{i f3}).
struct InputParams {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;
};

StateVector input_state(const InputParams& params);

// Rank-1 projectors onto the four Bell states, in BellIndex order.
std::array<ComplexMatrix, 4> bell_projectors();

// Unitary Bob applies to his qubit of a pair, indexed by the announced Bell outcome.
struct CorrectionTable {
    std::array<ComplexMatrix, 4> ops;

    // I for phi+, Z for phi-, X for psi+, X*Z for psi-.
    static CorrectionTable standard();
};

struct TeleportResult {
    DensityMatrix bob_state;                       // 4x4 on (B1, B2)
    std::array<MeasurementOutcome, 16> outcomes;   // pair1-major order
};

// Linear extension of the protocol map to an arbitrary 4x4 input operator.
// channel must be 16x16 with qubit order (A1, B1, A2, B2).
ComplexMatrix teleport_map(const ComplexMatrix& input, const DensityMatrix& channel,
                           const CorrectionTable& corrections = CorrectionTable::standard());

// Full protocol: both Bell measurements, outcome-conditioned corrections, and the
// probability-weighted average of all 16 corrected branches.
TeleportResult teleport_detailed(const StateVector& input, const DensityMatrix& channel,
                                 const CorrectionTable& corrections = CorrectionTable::standard());

DensityMatrix teleport(const StateVector& input, const DensityMatrix& channel);

// <psi| rho |psi> for a pure target state.
double state_fidelity(const StateVector& psi, const DensityMatrix& rho);

}  // namespace qtel
