#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qtel {

using complex = std::complex<double>;

// Numerical tolerances used by every invariant check in the library.
struct Tolerances {
    double hermiticity = 1e-12;
    double trace_one = 1e-12;
    double psd_floor = -1e-10;
    double norm = 1e-12;
};

inline constexpr Tolerances default_tolerances{};

// Dense row-major complex matrix. Sized for Hilbert-space dimensions up to 64.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::vector<complex>& data() { return entries_; }
    const std::vector<complex>& data() const { return entries_; }

    bool all_finite() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> entries_;
};

struct StateVector {
    std::vector<complex> amplitudes;
    bool normalized = true;

    std::size_t dim() const { return amplitudes.size(); }
    double squared_norm() const;
};

// Square matrix of dimension 2^n tagged with qubit labels.
// qubit_order[0] is the most significant bit of the basis index.
struct DensityMatrix {
    ComplexMatrix matrix;
    std::vector<std::string> qubit_order;

    std::size_t dim() const { return matrix.rows(); }
    std::size_t num_qubits() const { return qubit_order.size(); }

    // Throws std::invalid_argument if the Hermiticity / unit-trace /
    // positive-semidefiniteness invariants fail at the given tolerances.
    void validate(const Tolerances& tol = default_tolerances) const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& m);
complex trace(const ComplexMatrix& m);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(complex factor, const ComplexMatrix& m);

// max_ij |m - dagger(m)|
double hermiticity_error(const ComplexMatrix& m);

// Cyclic Jacobi diagonalization of a Hermitian matrix.
// values are sorted ascending; vectors holds the matching eigenvectors as columns.
struct EigenDecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;
};
EigenDecomposition eigh(const ComplexMatrix& m);

// Smallest eigenvalue of a Hermitian matrix (input must be Hermitian within 1e-10).
double min_eigenvalue(const ComplexMatrix& m);

// Partial trace keeping the qubits at the given bit positions (0 = most significant).
// Works on raw matrices; used by protocol code on intermediate non-density operators.
ComplexMatrix partial_trace_positions(const ComplexMatrix& m, std::size_t n_qubits,
                                      const std::vector<std::size_t>& keep_positions);

// Label-aware partial trace. Kept labels retain their original relative order.
// Unknown labels throw std::invalid_argument.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

}  // namespace qtel
