#include "qtel/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace qtel {

namespace {

struct Mat2 {
    complex e[4];  // row-major
    complex operator()(int i, int j) const { return e[2 * i + j]; }
    complex& operator()(int i, int j) { return e[2 * i + j]; }
};

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return c;
}

// Mixture components (E_i x E_j)|pair(theta)> of one damped pair, indexed over
// the pair's (A, B) basis; weights are carried in the vector norms.
std::vector<std::array<complex, 4>> pair_components(double theta, double p_a, double p_b) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<std::array<complex, 4>> out;
    auto push = [&out](complex a00, complex a01, complex a10, complex a11) {
        const double norm2 = std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11);
        if (norm2 > 1e-30) out.push_back({a00, a01, a10, a11});
    };
    push(c, 0.0, 0.0, s * std::sqrt((1.0 - p_a) * (1.0 - p_b)));  // E1 x E1
    push(0.0, 0.0, s * std::sqrt((1.0 - p_a) * p_b), 0.0);        // E1 x E2
    push(0.0, s * std::sqrt(p_a * (1.0 - p_b)), 0.0, 0.0);        // E2 x E1
    push(s * std::sqrt(p_a * p_b), 0.0, 0.0, 0.0);                // E2 x E2
    return out;
}

// Corrected measurement factor C_m * K where K(b, x) = sum_a conj(Bell_m(x, a)) v(a, b).
Mat2 corrected_factor(const std::array<complex, 4>& v, int m, const CorrectionTable& corrections) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Bell_m as 2x2 over (x, a).
    Mat2 bell{};
    switch (m) {
        case 0: bell(0, 0) = inv_sqrt2; bell(1, 1) = inv_sqrt2; break;
        case 1: bell(0, 0) = inv_sqrt2; bell(1, 1) = -inv_sqrt2; break;
        case 2: bell(0, 1) = inv_sqrt2; bell(1, 0) = inv_sqrt2; break;
        default: bell(0, 1) = inv_sqrt2; bell(1, 0) = -inv_sqrt2; break;
    }
    Mat2 k{};
    for (int b = 0; b < 2; ++b)
        for (int x = 0; x < 2; ++x)
            k(b, x) = std::conj(bell(x, 0)) * v[0 * 2 + b] + std::conj(bell(x, 1)) * v[1 * 2 + b];
    Mat2 corr{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) corr(i, j) = corrections.ops[m](i, j);
    return mul(corr, k);
}

}  // namespace

FidelityKernel::FidelityKernel(const ScenarioParams& s, const CorrectionTable& corrections) {
    s.validate();
    const auto comps1 = pair_components(s.theta1, s.p_A, s.p_B);
    const auto comps2 = pair_components(s.theta2, s.p_A, s.p_B);

    // Left form: S = sum vec(P) vec(P)^dagger over pair-1 branches, P = C_m1 K1,
    // vec over (b1, x1) row-major.
    for (const auto& v : comps1) {
        for (int m = 0; m < 4; ++m) {
            const Mat2 p = corrected_factor(v, m, corrections);
            for (int u = 0; u < 4; ++u)
                for (int w = 0; w < 4; ++w) left_form_[4 * u + w] += std::conj(p.e[u]) * p.e[w];
        }
    }

    // Right form: sum vec(Q) vec(Q)^dagger over pair-2 branches with
    // Q = (C_m2 K2)^T, vec over (x2, b2) row-major; kept as rank factors.
    ComplexMatrix right(4, 4);
    for (const auto& v : comps2) {
        for (int m = 0; m < 4; ++m) {
            const Mat2 p = corrected_factor(v, m, corrections);
            complex q[4] = {p(0, 0), p(1, 0), p(0, 1), p(1, 1)};  // transpose read-out
            for (int u = 0; u < 4; ++u)
                for (int w = 0; w < 4; ++w) right(u, w) += q[u] * std::conj(q[w]);
        }
    }
    const EigenDecomposition ed = eigh(right);
    n_right_ = 0;
    for (int r = 3; r >= 0; --r) {
        const double lambda = ed.values[r];
        if (lambda <= 1e-15) continue;
        const double root = std::sqrt(lambda);
        for (int u = 0; u < 4; ++u)
            right_factors_[n_right_][u] = root * ed.vectors(u, r);
        ++n_right_;
    }
}

double FidelityKernel::fidelity(const complex psi[4]) const {
    // A = psi reshaped over (x1, x2); all 2x2 algebra inlined on raw doubles.
    const double ar[4] = {psi[0].real(), psi[1].real(), psi[2].real(), psi[3].real()};
    const double ai[4] = {psi[0].imag(), psi[1].imag(), psi[2].imag(), psi[3].imag()};

    double total = 0.0;
    for (int t = 0; t < n_right_; ++t) {
        const complex* q = right_factors_[t].data();
        // B = A * Qhat, with Qhat(d, a) = q[2d + a].
        double br[4], bi[4];
        for (int x1 = 0; x1 < 2; ++x1) {
            for (int a = 0; a < 2; ++a) {
                const int i0 = 2 * x1, i1 = 2 * x1 + 1;
                const int q0 = a, q1 = 2 + a;
                br[2 * x1 + a] = ar[i0] * q[q0].real() - ai[i0] * q[q0].imag() +
                                 ar[i1] * q[q1].real() - ai[i1] * q[q1].imag();
                bi[2 * x1 + a] = ar[i0] * q[q0].imag() + ai[i0] * q[q0].real() +
                                 ar[i1] * q[q1].imag() + ai[i1] * q[q1].real();
            }
        }
        // G = B * A^dagger; g vector over (b, c) is the transpose read-out g[2b+c] = G(c, b).
        double gr[4], gi[4];
        for (int cidx = 0; cidx < 2; ++cidx) {
            for (int b = 0; b < 2; ++b) {
                const int b0 = 2 * cidx, b1 = 2 * cidx + 1;
                const int a0 = 2 * b, a1 = 2 * b + 1;
                // (B A^H)(c, b) = B(c,0) conj(A(b,0)) + B(c,1) conj(A(b,1))
                gr[2 * b + cidx] = br[b0] * ar[a0] + bi[b0] * ai[a0] + br[b1] * ar[a1] +
                                   bi[b1] * ai[a1];
                gi[2 * b + cidx] = bi[b0] * ar[a0] - br[b0] * ai[a0] + bi[b1] * ar[a1] -
                                   br[b1] * ai[a1];
            }
        }
        // g^dagger S g with the Hermitian left form.
        double acc = 0.0;
        for (int u = 0; u < 4; ++u) {
            const complex* row = &left_form_[4 * u];
            double hr = 0.0, hi = 0.0;
            for (int w = 0; w < 4; ++w) {
                hr += row[w].real() * gr[w] - row[w].imag() * gi[w];
                hi += row[w].real() * gi[w] + row[w].imag() * gr[w];
            }
            acc += gr[u] * hr + gi[u] * hi;
        }
        total += acc;
    }
    return total;
}

double FidelityKernel::fidelity(const StateVector& psi) const {
    if (psi.dim() != 4)
        throw std::invalid_argument("FidelityKernel: input state must have dimension 4");
    return fidelity(psi.amplitudes.data());
}

}  // namespace qtel
