// Timing comparison between the dense reference protocol and the fast kernel,
// plus thread scaling of the averaging loops.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qtel/fidelity.hpp"
#include "qtel/kernel.hpp"
#include "qtel/rng.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main() {
    const qtel::ScenarioParams scenario{0.5235987755982988, 1.0471975511965976, 0.3, 0.15};
    const qtel::DensityMatrix channel = qtel::noisy_channel_state(scenario);
    const qtel::FidelityKernel kernel(scenario);

    constexpr int kInputs = 200;
    std::vector<qtel::StateVector> inputs(kInputs);
    for (int i = 0; i < kInputs; ++i) {
        const auto amps = qtel::haar_state4(1234, static_cast<std::uint64_t>(i));
        inputs[i].amplitudes.assign(amps.begin(), amps.end());
    }

    std::printf("scenario: theta1=%.4f theta2=%.4f p_A=%.2f p_B=%.2f\n", scenario.theta1,
                scenario.theta2, scenario.p_A, scenario.p_B);

    // Per-input fidelity: dense reference vs kernel.
    double ref_sum = 0.0;
    auto t0 = Clock::now();
    for (const auto& psi : inputs) ref_sum += qtel::state_fidelity(psi, qtel::teleport(psi, channel));
    const double ref_time = seconds_since(t0);

    double fast_sum = 0.0;
    t0 = Clock::now();
    constexpr int kFastRepeats = 2000;
    for (int r = 0; r < kFastRepeats; ++r) {
        fast_sum = 0.0;
        for (const auto& psi : inputs) fast_sum += kernel.fidelity(psi);
    }
    const double fast_time = seconds_since(t0) / kFastRepeats;

    std::printf("\nper-input fidelity (%d inputs)\n", kInputs);
    std::printf("  dense reference : %10.3f us/input\n", 1e6 * ref_time / kInputs);
    std::printf("  fast kernel     : %10.3f us/input\n", 1e6 * fast_time / kInputs);
    std::printf("  speedup         : %10.1fx\n", ref_time / fast_time);
    std::printf("  |sum dev|       : %10.2e\n", std::abs(ref_sum - fast_sum));

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif

    // Quadrature thread scaling; values must match bitwise across thread counts.
    std::printf("\nquadrature average (12^3 x 8^3 nodes)\n");
    double serial_value = 0.0, serial_time = 0.0;
    for (int threads = 1; threads <= max_threads; threads *= 2) {
#ifdef _OPENMP
        omp_set_num_threads(threads);
#endif
        t0 = Clock::now();
        const auto result = qtel::avg_fidelity_quadrature(scenario);
        const double elapsed = seconds_since(t0);
        if (threads == 1) {
            serial_value = result.value;
            serial_time = elapsed;
        }
        std::printf("  %2d thread%s : %8.3f s  value %.15f  %s  speedup %.2fx\n", threads,
                    threads == 1 ? " " : "s", elapsed, result.value,
                    result.value == serial_value ? "bitwise-equal" : "MISMATCH",
                    serial_time / elapsed);
    }

    // Monte Carlo thread scaling with a fixed seed.
    std::printf("\nmonte carlo average (200000 samples, seed 42)\n");
    for (int threads = 1; threads <= max_threads; threads *= 2) {
#ifdef _OPENMP
        omp_set_num_threads(threads);
#endif
        t0 = Clock::now();
        const auto result = qtel::avg_fidelity_monte_carlo(scenario, 200000, 42);
        const double elapsed = seconds_since(t0);
        if (threads == 1) serial_value = result.value;
        std::printf("  %2d thread%s : %8.3f s  value %.15f  %s\n", threads,
                    threads == 1 ? " " : "s", elapsed, result.value,
                    result.value == serial_value ? "bitwise-equal" : "MISMATCH");
    }
    return 0;
}
