#pragma once

#include "qtel/noise.hpp"
#include "qtel/teleport.hpp"

namespace qtel {

// Fast per-input fidelity evaluator for a fixed scenario.
//
// The protocol output is an average over 16 measurement branches of a channel
// that is itself a mixture of at most 4 x 4 pure components per pair, so the
// per-input fidelity is a sum of |<psi| C (K1 x K2) |psi>|^2 terms whose pair
// factors do not depend on the input. Grouping those factors into two fixed
// positive-semidefinite 4x4 forms collapses the branch/component sums; what is
// left per input is a handful of 2x2 products. fidelity(psi) equals
// state_fidelity(psi, teleport(psi, channel)) to roundoff, which the tests
// enforce against the dense reference implementation.
class FidelityKernel {
  public:
    explicit FidelityKernel(const ScenarioParams& s,
                            const CorrectionTable& corrections = CorrectionTable::standard());

    // psi: 4 amplitudes over (X1, X2), assumed normalized.
    double fidelity(const complex psi[4]) const;
    double fidelity(const StateVector& psi) const;

  private:
    // Left form S (Hermitian PSD, row-major 4x4) and right factors Qhat
    // (rank terms of the right form, each a 2x2 with the eigenvalue folded in).
    std::array<complex, 16> left_form_{};
    std::array<std::array<complex, 4>, 4> right_factors_{};
    int n_right_ = 0;
};

}  // namespace qtel
