#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtel/densemath.hpp"
#include "qtel/noise.hpp"
#include "qtel/rng.hpp"
#include "oracles.hpp"

using namespace qtel;

namespace {

ComplexMatrix random_2x2(SplitMix64& rng) {
    ComplexMatrix m(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            m(i, j) = complex(2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0);
    return m;
}

ComplexMatrix random_hermitian(SplitMix64& rng, std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 2.0 * rng.next_unit() - 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = complex(2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

DensityMatrix bell_pair_density() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix v(4, 1);
    v(0, 0) = s;
    v(3, 0) = s;
    return DensityMatrix{matmul(v, dagger(v)), {"q1", "q2"}};
}

}  // namespace

TEST_CASE("kron identity and projector cases") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix i4 = ComplexMatrix::identity(4);
    CHECK(oracles::max_abs_diff(kron(i2, i2), i4) == 0.0);

    const ComplexMatrix p0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    const ComplexMatrix pp = kron(p0, p0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(pp(i, j) == (i == 0 && j == 0 ? complex(1.0) : complex(0.0)));

    const ComplexMatrix half = scale(0.5, i2);
    CHECK(oracles::max_abs_diff(kron(half, half), scale(0.25, i4)) < 1e-16);
}

TEST_CASE("kron associativity on random 2x2 matrices") {
    SplitMix64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const ComplexMatrix a = random_2x2(rng);
        const ComplexMatrix b = random_2x2(rng);
        const ComplexMatrix c = random_2x2(rng);
        CHECK(oracles::max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
    }
}

TEST_CASE("matmul, dagger, trace basics") {
    const ComplexMatrix x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(oracles::max_abs_diff(matmul(x, x), ComplexMatrix::identity(2)) == 0.0);

    // adjoint of the decay operator at full strength
    const ComplexMatrix e2 = amplitude_damping_kraus(1.0).operators[1];
    const ComplexMatrix e2d = dagger(e2);
    CHECK(e2d(1, 0) == complex(1.0));
    CHECK(e2d(0, 0) == complex(0.0));
    CHECK(e2d(0, 1) == complex(0.0));
    CHECK(e2d(1, 1) == complex(0.0));

    CHECK(trace(scale(0.25, ComplexMatrix::identity(4))) == complex(1.0));

    CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(add(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(trace(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("dagger is an exact involution") {
    SplitMix64 rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix m = random_2x2(rng);
        const ComplexMatrix dd = dagger(dagger(m));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(dd(i, j) == m(i, j));
    }
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
    const DensityMatrix bell = bell_pair_density();
    const DensityMatrix reduced = partial_trace(bell, {"q1"});
    CHECK(reduced.qubit_order == std::vector<std::string>{"q1"});
    CHECK(oracles::max_abs_diff(reduced.matrix, scale(0.5, ComplexMatrix::identity(2))) < 1e-15);
}

TEST_CASE("partial trace factorizes product states") {
    SplitMix64 rng(13);
    // rho (x) sigma on three qubits, keep the left block
    const auto v1 = haar_vector(4, rng);
    const auto v2 = haar_vector(2, rng);
    ComplexMatrix rho_l(4, 4), rho_r(2, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho_l(i, j) = v1[i] * std::conj(v1[j]);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rho_r(i, j) = v2[i] * std::conj(v2[j]);

    const DensityMatrix prod{kron(rho_l, rho_r), {"a", "b", "c"}};
    const DensityMatrix left = partial_trace(prod, {"a", "b"});
    CHECK(oracles::max_abs_diff(left.matrix, rho_l) < 1e-14);
}

TEST_CASE("partial trace keeps everything or nothing") {
    const DensityMatrix bell = bell_pair_density();
    const DensityMatrix all = partial_trace(bell, {"q1", "q2"});
    CHECK(oracles::max_abs_diff(all.matrix, bell.matrix) == 0.0);

    const DensityMatrix none = partial_trace(bell, {});
    CHECK(none.dim() == 1);
    CHECK(std::abs(none.matrix(0, 0) - complex(1.0)) < 1e-15);

    CHECK_THROWS_AS(partial_trace(bell, {"zz"}), std::invalid_argument);
}

TEST_CASE("partial trace preserves trace on random mixed states") {
    SplitMix64 rng(14);
    for (int rep = 0; rep < 25; ++rep) {
        ComplexMatrix rho(8, 8);
        for (int k = 0; k < 3; ++k) {
            const auto v = haar_vector(8, rng);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) rho(i, j) += (1.0 / 3.0) * v[i] * std::conj(v[j]);
        }
        const DensityMatrix dm{rho, {"a", "b", "c"}};
        const DensityMatrix red = partial_trace(dm, {"b"});
        CHECK(std::abs(trace(red.matrix) - trace(rho)) < 1e-12);
    }
}

TEST_CASE("damped channel marginals match the index-level oracle") {
    // Damping only Alice's qubits at strength 0.36; the damped qubit's
    // population moves toward |0>, the partner marginal stays maximally mixed.
    const double quarter_pi = std::atan(1.0);
    const ComplexMatrix oracle = oracles::damped_channel_16(quarter_pi, quarter_pi, 0.36, 0.0);

    const ComplexMatrix a1_oracle = oracles::marginal(oracle, 4, {0});
    CHECK(std::abs(a1_oracle(0, 0) - complex(0.68)) < 1e-12);
    CHECK(std::abs(a1_oracle(1, 1) - complex(0.32)) < 1e-12);

    const DensityMatrix impl = noisy_channel_state({quarter_pi, quarter_pi, 0.36, 0.0});
    const DensityMatrix a1 = partial_trace(impl, {"A1"});
    CHECK(std::abs(a1.matrix(0, 0) - complex(0.68)) < 1e-12);
    CHECK(std::abs(a1.matrix(1, 1) - complex(0.32)) < 1e-12);
    CHECK(std::abs(a1.matrix(0, 1)) < 1e-13);

    const DensityMatrix b1 = partial_trace(impl, {"B1"});
    const ComplexMatrix b1_oracle = oracles::marginal(oracle, 4, {1});
    CHECK(oracles::max_abs_diff(b1.matrix, b1_oracle) < 1e-13);
    CHECK(std::abs(b1.matrix(0, 0) - complex(0.5)) < 1e-12);
    CHECK(std::abs(b1.matrix(1, 1) - complex(0.5)) < 1e-12);
}

TEST_CASE("min_eigenvalue on simple spectra") {
    CHECK(min_eigenvalue(ComplexMatrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix diag(4, 4);
    diag(0, 0) = 0.7;
    diag(1, 1) = 0.3;
    CHECK(std::abs(min_eigenvalue(diag)) < 1e-14);

    const DensityMatrix bell = bell_pair_density();
    CHECK(std::abs(min_eigenvalue(bell.matrix)) < 1e-14);

    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(min_eigenvalue(bad), std::invalid_argument);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
    SplitMix64 rng(15);
    for (std::size_t n : {2ul, 4ul, 8ul, 16ul}) {
        const ComplexMatrix m = random_hermitian(rng, n);
        const EigenDecomposition ed = eigh(m);

        // V D V^dagger == m
        ComplexMatrix vd(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) vd(i, j) = ed.vectors(i, j) * ed.values[j];
        CHECK(oracles::max_abs_diff(matmul(vd, dagger(ed.vectors)), m) < 1e-10);

        // ascending order
        for (std::size_t j = 1; j < n; ++j) CHECK(ed.values[j - 1] <= ed.values[j] + 1e-14);

        // orthonormal columns
        CHECK(oracles::max_abs_diff(matmul(dagger(ed.vectors), ed.vectors),
                                    ComplexMatrix::identity(n)) < 1e-11);
    }
}

TEST_CASE("density matrix validation catches violations") {
    const DensityMatrix bell = bell_pair_density();
    CHECK_NOTHROW(bell.validate());

    DensityMatrix scaled{scale(2.0, bell.matrix), bell.qubit_order};
    CHECK_THROWS_AS(scaled.validate(), std::invalid_argument);

    DensityMatrix negative = bell;
    negative.matrix(0, 0) = -0.1;
    negative.matrix(3, 3) = 1.1;
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}
