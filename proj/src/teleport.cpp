#include "qtel/teleport.hpp"

#include <cmath>
#include <stdexcept>

namespace qtel {

namespace {

constexpr std::size_t kGlobalQubits = 6;  // (X1, X2, A1, B1, A2, B2)
constexpr std::size_t kDim = 64;

// Bell vectors over a (control, channel) qubit pair; first index is the pair's high bit.
std::array<std::array<complex, 4>, 4> bell_vectors() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::array<std::array<complex, 4>, 4> v{};
    v[0] = {inv_sqrt2, 0.0, 0.0, inv_sqrt2};    // phi+
    v[1] = {inv_sqrt2, 0.0, 0.0, -inv_sqrt2};   // phi-
    v[2] = {0.0, inv_sqrt2, inv_sqrt2, 0.0};    // psi+
    v[3] = {0.0, inv_sqrt2, -inv_sqrt2, 0.0};   // psi-
    return v;
}

// rho <- (G x I) rho (G x I)^dagger with the 4x4 operator G acting on qubit
// positions (qa, qb); qa supplies G's high bit. Positions count from the most
// significant bit of the basis index.
void apply_two_qubit_sandwich(ComplexMatrix& rho, const ComplexMatrix& g, std::size_t qa,
                              std::size_t qb) {
    const std::size_t sa = std::size_t{1} << (kGlobalQubits - 1 - qa);
    const std::size_t sb = std::size_t{1} << (kGlobalQubits - 1 - qb);

    // Left multiply: rows mixing within each (qa, qb) subspace.
    for (std::size_t base = 0; base < kDim; ++base) {
        if ((base & sa) || (base & sb)) continue;
        const std::size_t r[4] = {base, base + sb, base + sa, base + sa + sb};
        for (std::size_t col = 0; col < kDim; ++col) {
            complex in[4], out[4];
            for (int i = 0; i < 4; ++i) in[i] = rho(r[i], col);
            for (int i = 0; i < 4; ++i) {
                out[i] = g(i, 0) * in[0] + g(i, 1) * in[1] + g(i, 2) * in[2] + g(i, 3) * in[3];
            }
            for (int i = 0; i < 4; ++i) rho(r[i], col) = out[i];
        }
    }
    // Right multiply by G^dagger: columns mixing the same way.
    for (std::size_t base = 0; base < kDim; ++base) {
        if ((base & sa) || (base & sb)) continue;
        const std::size_t c[4] = {base, base + sb, base + sa, base + sa + sb};
        for (std::size_t row = 0; row < kDim; ++row) {
            complex in[4], out[4];
            for (int i = 0; i < 4; ++i) in[i] = rho(row, c[i]);
            for (int i = 0; i < 4; ++i) {
                out[i] = std::conj(g(i, 0)) * in[0] + std::conj(g(i, 1)) * in[1] +
                         std::conj(g(i, 2)) * in[2] + std::conj(g(i, 3)) * in[3];
            }
            for (int i = 0; i < 4; ++i) rho(row, c[i]) = out[i];
        }
    }
}

void apply_one_qubit_sandwich(ComplexMatrix& rho, const ComplexMatrix& g, std::size_t q) {
    const std::size_t s = std::size_t{1} << (kGlobalQubits - 1 - q);
    for (std::size_t base = 0; base < kDim; ++base) {
        if (base & s) continue;
        for (std::size_t col = 0; col < kDim; ++col) {
            const complex v0 = rho(base, col);
            const complex v1 = rho(base + s, col);
            rho(base, col) = g(0, 0) * v0 + g(0, 1) * v1;
            rho(base + s, col) = g(1, 0) * v0 + g(1, 1) * v1;
        }
    }
    for (std::size_t base = 0; base < kDim; ++base) {
        if (base & s) continue;
        for (std::size_t row = 0; row < kDim; ++row) {
            const complex v0 = rho(row, base);
            const complex v1 = rho(row, base + s);
            rho(row, base) = std::conj(g(0, 0)) * v0 + std::conj(g(0, 1)) * v1;
            rho(row, base + s) = std::conj(g(1, 0)) * v0 + std::conj(g(1, 1)) * v1;
        }
    }
}

void check_channel(const DensityMatrix& channel) {
    const std::vector<std::string> expected{"A1", "B1", "A2", "B2"};
    if (channel.dim() != 16 || channel.qubit_order != expected)
        throw std::invalid_argument("teleport: channel must be 16x16 on (A1, B1, A2, B2)");
}

}  // namespace

StateVector input_state(const InputParams& params) {
    const double a = std::cos(params.eta3);
    const double b = std::sin(params.eta3) * std::cos(params.eta2);
    const double c = std::sin(params.eta3) * std::sin(params.eta2) * std::cos(params.eta1);
    const double d = std::sin(params.eta3) * std::sin(params.eta2) * std::sin(params.eta1);
    StateVector psi;
    psi.amplitudes = {complex(a, 0.0), b * std::polar(1.0, params.phi1),
                      c * std::polar(1.0, params.phi2), d * std::polar(1.0, params.phi3)};
    psi.normalized = true;
    return psi;
}

std::array<ComplexMatrix, 4> bell_projectors() {
    const auto vecs = bell_vectors();
    std::array<ComplexMatrix, 4> out;
    for (int m = 0; m < 4; ++m) {
        ComplexMatrix v(4, 1);
        for (int i = 0; i < 4; ++i) v(i, 0) = vecs[m][i];
        out[m] = matmul(v, dagger(v));
    }
    return out;
}

CorrectionTable CorrectionTable::standard() {
    CorrectionTable t;
    t.ops[0] = ComplexMatrix::identity(2);                          // phi+
    t.ops[1] = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); // phi-  : Z
    t.ops[2] = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});  // psi+  : X
    t.ops[3] = ComplexMatrix::from_rows({{0.0, -1.0}, {1.0, 0.0}}); // psi-  : X*Z
    return t;
}

ComplexMatrix teleport_map(const ComplexMatrix& input, const DensityMatrix& channel,
                           const CorrectionTable& corrections) {
    if (input.rows() != 4 || input.cols() != 4)
        throw std::invalid_argument("teleport: input operator must be 4x4");
    check_channel(channel);

    const ComplexMatrix global = kron(input, channel.matrix);
    const auto projectors = bell_projectors();

    // Global qubit positions: X1=0, X2=1, A1=2, B1=3, A2=4, B2=5.
    ComplexMatrix bob(4, 4);
    for (int m1 = 0; m1 < 4; ++m1) {
        for (int m2 = 0; m2 < 4; ++m2) {
            ComplexMatrix branch = global;
            apply_two_qubit_sandwich(branch, projectors[m1], 0, 2);
            apply_two_qubit_sandwich(branch, projectors[m2], 1, 4);
            apply_one_qubit_sandwich(branch, corrections.ops[m1], 3);
            apply_one_qubit_sandwich(branch, corrections.ops[m2], 5);
            bob = add(bob, partial_trace_positions(branch, kGlobalQubits, {3, 5}));
        }
    }
    return bob;
}

TeleportResult teleport_detailed(const StateVector& input, const DensityMatrix& channel,
                                 const CorrectionTable& corrections) {
    if (input.dim() != 4) throw std::invalid_argument("teleport: input state must have dimension 4");
    check_channel(channel);

    ComplexMatrix in_op(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) in_op(i, j) = input.amplitudes[i] * std::conj(input.amplitudes[j]);

    const ComplexMatrix global = kron(in_op, channel.matrix);
    const auto projectors = bell_projectors();

    TeleportResult result;
    ComplexMatrix bob(4, 4);
    int k = 0;
    for (int m1 = 0; m1 < 4; ++m1) {
        for (int m2 = 0; m2 < 4; ++m2) {
            ComplexMatrix branch = global;
            apply_two_qubit_sandwich(branch, projectors[m1], 0, 2);
            apply_two_qubit_sandwich(branch, projectors[m2], 1, 4);
            const double prob = trace(branch).real();
            apply_one_qubit_sandwich(branch, corrections.ops[m1], 3);
            apply_one_qubit_sandwich(branch, corrections.ops[m2], 5);
            bob = add(bob, partial_trace_positions(branch, kGlobalQubits, {3, 5}));
            result.outcomes[k++] = {static_cast<BellIndex>(m1), static_cast<BellIndex>(m2), prob};
        }
    }
    result.bob_state = DensityMatrix{bob, {"B1", "B2"}};
    return result;
}

DensityMatrix teleport(const StateVector& input, const DensityMatrix& channel) {
    return teleport_detailed(input, channel).bob_state;
}

double state_fidelity(const StateVector& psi, const DensityMatrix& rho) {
    if (psi.dim() != rho.dim())
        throw std::invalid_argument("state_fidelity: dimension mismatch");
    complex f = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i)
        for (std::size_t j = 0; j < psi.dim(); ++j)
            f += std::conj(psi.amplitudes[i]) * rho.matrix(i, j) * psi.amplitudes[j];
    return f.real();
}

}  // namespace qtel
