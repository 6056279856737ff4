#include "qtel/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtel {

double KrausSet::completeness_error() const {
    if (operators.empty()) return 1.0;
    const std::size_t n = operators.front().rows();
    ComplexMatrix sum(n, n);
    for (const auto& e : operators) sum = add(sum, matmul(dagger(e), e));
    double err = 0.0;
    const ComplexMatrix id = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(sum(i, j) - id(i, j)));
    return err;
}

void ScenarioParams::validate() const {
    const double half_pi = 2.0 * std::atan(1.0);
    if (!(theta1 >= 0.0 && theta1 <= half_pi) || !(theta2 >= 0.0 && theta2 <= half_pi))
        throw std::domain_error("channel angle outside [0, pi/2]");
    if (!(p_A >= 0.0 && p_A <= 1.0) || !(p_B >= 0.0 && p_B <= 1.0))
        throw std::domain_error("noise strength outside [0, 1]");
}

KrausSet amplitude_damping_kraus(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("damping strength outside [0, 1]");
    KrausSet set;
    set.strength = p;
    set.operators.push_back(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}}));
    set.operators.push_back(ComplexMatrix::from_rows({{0.0, std::sqrt(p)}, {0.0, 0.0}}));
    return set;
}

DensityMatrix bell_like_channel_state(double theta1, double theta2) {
    const double half_pi = 2.0 * std::atan(1.0);
    if (!(theta1 >= 0.0 && theta1 <= half_pi) || !(theta2 >= 0.0 && theta2 <= half_pi))
        throw std::domain_error("channel angle outside [0, pi/2]");

    auto pair_state = [](double theta) {
        ComplexMatrix psi(4, 1);
        psi(0, 0) = std::cos(theta);
        psi(3, 0) = std::sin(theta);
        return matmul(psi, dagger(psi));
    };
    return DensityMatrix{kron(pair_state(theta1), pair_state(theta2)), {"A1", "B1", "A2", "B2"}};
}

DensityMatrix apply_amplitude_damping(const DensityMatrix& rho,
                                      const std::map<std::string, double>& assignment) {
    const std::size_t n = rho.qubit_order.size();
    for (const auto& [label, p] : assignment) {
        if (std::find(rho.qubit_order.begin(), rho.qubit_order.end(), label) ==
            rho.qubit_order.end())
            throw std::invalid_argument("apply_amplitude_damping: unknown qubit label '" + label +
                                        "'");
        (void)p;
    }

    // Per-qubit operator choices in qubit order; unassigned qubits get only the identity.
    std::vector<std::vector<ComplexMatrix>> choices(n);
    for (std::size_t q = 0; q < n; ++q) {
        auto it = assignment.find(rho.qubit_order[q]);
        if (it == assignment.end()) {
            choices[q] = {ComplexMatrix::identity(2)};
        } else {
            choices[q] = amplitude_damping_kraus(it->second).operators;
        }
    }

    // Full composite sum over every combination of per-qubit Kraus operators.
    ComplexMatrix result(rho.dim(), rho.dim());
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        ComplexMatrix op = choices[0][pick[0]];
        for (std::size_t q = 1; q < n; ++q) op = kron(op, choices[q][pick[q]]);
        result = add(result, matmul(matmul(op, rho.matrix), dagger(op)));

        std::size_t q = n;
        while (q > 0) {
            --q;
            if (++pick[q] < choices[q].size()) break;
            pick[q] = 0;
            if (q == 0) return DensityMatrix{result, rho.qubit_order};
        }
    }
}

DensityMatrix noisy_channel_state(const ScenarioParams& s) {
    s.validate();
    return apply_amplitude_damping(
        bell_like_channel_state(s.theta1, s.theta2),
        {{"A1", s.p_A}, {"A2", s.p_A}, {"B1", s.p_B}, {"B2", s.p_B}});
}

}  // namespace qtel
