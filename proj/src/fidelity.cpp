#include "qtel/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qtel/kernel.hpp"
#include "qtel/quadrature.hpp"
#include "qtel/rng.hpp"

namespace qtel {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 0.5 * kPi;

double bracket(double theta, double p_a, double p_b) {
    const double st = std::sin(theta);
    return 1.0 + (2.0 * p_a * p_b - p_a - p_b) * st * st +
           std::sqrt((1.0 - p_a) * (1.0 - p_b)) * std::sin(2.0 * theta);
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo: return "monte_carlo";
        case Method::process_matrix: return "process_matrix";
    }
    return "unknown";
}

double avg_fidelity_closed(const ScenarioParams& s) {
    return 0.2 + 0.2 * bracket(s.theta1, s.p_A, s.p_B) * bracket(s.theta2, s.p_A, s.p_B);
}

double avg_fidelity_bell_ab(double p_a, double p_b) {
    const double inner = 1.0 + p_a * p_b - 0.5 * p_a - 0.5 * p_b +
                         std::sqrt((1.0 - p_a) * (1.0 - p_b));
    return 0.2 + 0.2 * inner * inner;
}

double avg_fidelity_bell_b(double p_b) {
    return (6.0 + 4.0 * std::sqrt(1.0 - p_b) - p_b) * (2.0 - p_b) / 20.0;
}

double theta_opt(double p_a, double p_b) {
    const double numer = 2.0 * std::sqrt((1.0 - p_a) * (1.0 - p_b));
    const double denom = p_a + p_b - 2.0 * p_a * p_b;
    if (numer == 0.0 && denom == 0.0) return 0.25 * kPi;  // fidelity flat in theta
    return 0.5 * std::atan2(numer, denom);
}

double avg_fidelity_belllike_opt_ab(double p_a, double p_b) {
    const double cross = p_a + p_b - 2.0 * p_a * p_b;
    const double inner = 2.0 - p_a - p_b + 2.0 * p_a * p_b +
                         std::sqrt(4.0 * (1.0 - p_a) * (1.0 - p_b) + cross * cross);
    return 0.2 + inner * inner / 20.0;
}

double avg_fidelity_belllike_opt_b(double p_b) {
    return 0.2 + 0.2 * (2.0 - p_b) * (2.0 - p_b);
}

AverageFidelityResult avg_fidelity_quadrature(const ScenarioParams& s, const QuadratureSpec& spec,
                                              const CorrectionTable& corrections) {
    if (spec.eta_nodes < 12)
        throw std::invalid_argument("avg_fidelity_quadrature: need at least 12 eta nodes");
    if (spec.phi_nodes < 8)
        throw std::invalid_argument("avg_fidelity_quadrature: need at least 8 phi nodes");
    s.validate();

    const FidelityKernel kernel(s, corrections);
    const std::size_t ne = spec.eta_nodes;
    const std::size_t np = spec.phi_nodes;
    const QuadratureRule rule = gauss_legendre(ne, 0.0, kHalfPi);

    // Per-dimension weights including the measure factor cos(eta) sin^{2k-1}(eta).
    std::vector<double> w1(ne), w2(ne), w3(ne), cos_eta(ne), sin_eta(ne);
    for (std::size_t i = 0; i < ne; ++i) {
        const double eta = rule.nodes[i];
        cos_eta[i] = std::cos(eta);
        sin_eta[i] = std::sin(eta);
        const double cw = rule.weights[i] * cos_eta[i];
        w1[i] = cw * sin_eta[i];
        w2[i] = cw * sin_eta[i] * sin_eta[i] * sin_eta[i];
        w3[i] = cw * std::pow(sin_eta[i], 5);
    }
    std::vector<complex> phase(np);
    for (std::size_t j = 0; j < np; ++j)
        phase[j] = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(np));

    // One partial sum per eta triple, each filled serially by one thread, then
    // reduced in index order: results do not depend on the thread count.
    const std::int64_t n_triples = static_cast<std::int64_t>(ne * ne * ne);
    std::vector<double> partials(static_cast<std::size_t>(n_triples));

#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < n_triples; ++idx) {
        const std::size_t i1 = static_cast<std::size_t>(idx) % ne;
        const std::size_t i2 = (static_cast<std::size_t>(idx) / ne) % ne;
        const std::size_t i3 = static_cast<std::size_t>(idx) / (ne * ne);

        const double a = cos_eta[i3];
        const double sb = sin_eta[i3];
        const double b = sb * cos_eta[i2];
        const double sc = sb * sin_eta[i2];
        const double c = sc * cos_eta[i1];
        const double d = sc * sin_eta[i1];

        double acc = 0.0;
        complex psi[4];
        psi[0] = complex(a, 0.0);
        for (std::size_t j1 = 0; j1 < np; ++j1) {
            psi[1] = b * phase[j1];
            for (std::size_t j2 = 0; j2 < np; ++j2) {
                psi[2] = c * phase[j2];
                for (std::size_t j3 = 0; j3 < np; ++j3) {
                    psi[3] = d * phase[j3];
                    acc += kernel.fidelity(psi);
                }
            }
        }
        partials[static_cast<std::size_t>(idx)] = acc * w3[i3] * w2[i2] * w1[i1];
    }

    double total = 0.0;
    for (const double p : partials) total += p;
    const double phi_weight = 2.0 * kPi / static_cast<double>(np);
    total *= phi_weight * phi_weight * phi_weight * 6.0 / (kPi * kPi * kPi);

    return {total, Method::quadrature, ne * ne * ne * np * np * np, 0.0};
}

AverageFidelityResult avg_fidelity_monte_carlo(const ScenarioParams& s, std::size_t n,
                                               std::uint64_t seed,
                                               const CorrectionTable& corrections) {
    if (n < 100) throw std::invalid_argument("avg_fidelity_monte_carlo: need at least 100 samples");
    s.validate();

    const FidelityKernel kernel(s, corrections);
    std::vector<double> values(n);

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        const auto psi = haar_state4(seed, static_cast<std::uint64_t>(i));
        values[static_cast<std::size_t>(i)] = kernel.fidelity(psi.data());
    }

    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    const double std_error =
        n > 1 ? std::sqrt(var / (static_cast<double>(n) * (static_cast<double>(n) - 1.0))) : 0.0;

    return {mean, Method::monte_carlo, n, std_error};
}

AverageFidelityResult avg_fidelity_process(const ScenarioParams& s,
                                           const CorrectionTable& corrections) {
    s.validate();
    const DensityMatrix channel = noisy_channel_state(s);

    // Entanglement fidelity from the basis-element images:
    // F_e = (1/16) sum_ij <i| T(|i><j|) |j>.
    complex fe = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            ComplexMatrix basis(4, 4);
            basis(i, j) = 1.0;
            const ComplexMatrix image = teleport_map(basis, channel, corrections);
            fe += image(i, j);
        }
    }
    const double f_e = fe.real() / 16.0;
    return {(4.0 * f_e + 1.0) / 5.0, Method::process_matrix, 16, 0.0};
}

OptimalChannel optimize_theta_numeric(double p_a, double p_b) {
    if (!(p_a >= 0.0 && p_a <= 1.0) || !(p_b >= 0.0 && p_b <= 1.0))
        throw std::domain_error("optimize_theta_numeric: noise strength outside [0, 1]");

    auto objective = [&](double t1, double t2) {
        return avg_fidelity_closed({t1, t2, p_a, p_b});
    };

    const double numer = 2.0 * std::sqrt((1.0 - p_a) * (1.0 - p_b));
    const double denom = p_a + p_b - 2.0 * p_a * p_b;
    if (numer == 0.0 && denom == 0.0) {
        // Both bracket coefficients vanish: any angle is optimal.
        return {0.25 * kPi, objective(0.25 * kPi, 0.25 * kPi), true, 0.0};
    }

    constexpr int kGrid = 181;
    const double coarse = kHalfPi / (kGrid - 1);
    double best1 = 0.0, best2 = 0.0, best = -1.0;
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const double t1 = i * coarse;
            const double t2 = j * coarse;
            const double f = objective(t1, t2);
            if (f > best) {
                best = f;
                best1 = t1;
                best2 = t2;
            }
        }
    }

    // Shrinking local grid around the incumbent, down to 1e-8 resolution.
    for (double step = coarse / 4.0; step > 2.5e-10; step /= 4.0) {
        double c1 = best1, c2 = best2;
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                const double t1 = std::clamp(c1 + i * step, 0.0, kHalfPi);
                const double t2 = std::clamp(c2 + j * step, 0.0, kHalfPi);
                const double f = objective(t1, t2);
                if (f > best) {
                    best = f;
                    best1 = t1;
                    best2 = t2;
                }
            }
        }
    }

    OptimalChannel out;
    out.asymmetry = std::abs(best1 - best2);
    out.theta_opt = 0.5 * (best1 + best2);
    out.fidelity = best;
    out.degenerate = false;
    return out;
}

double find_crossing(double lo, double hi) {
    auto diff = [](double p) { return avg_fidelity_bell_ab(p, p) - avg_fidelity_bell_b(p); };
    double flo = diff(lo);
    const double fhi = diff(hi);
    const bool sign_change = (flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0);
    if (!sign_change)
        throw std::domain_error("find_crossing: no sign change on the given interval");

    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = diff(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qtel
