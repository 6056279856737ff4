#include "qtel/densemath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qtel {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<complex>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("from_rows: ragged rows");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& e : entries_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    }
    return true;
}

double StateVector::squared_norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

void DensityMatrix::validate(const Tolerances& tol) const {
    if (matrix.rows() != matrix.cols()) throw std::invalid_argument("density matrix not square");
    if (matrix.rows() != (std::size_t{1} << qubit_order.size()))
        throw std::invalid_argument("density matrix dimension does not match qubit count");
    if (hermiticity_error(matrix) > tol.hermiticity)
        throw std::invalid_argument("density matrix not Hermitian");
    if (std::abs(trace(matrix) - complex(1.0)) > tol.trace_one)
        throw std::invalid_argument("density matrix trace != 1");
    if (min_eigenvalue(matrix) < tol.psd_floor)
        throw std::invalid_argument("density matrix not positive semidefinite");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complex aij = a(i, j);
            if (aij == complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex aik = a(i, k);
            if (aik == complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

complex trace(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("trace: matrix not square");
    complex t = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("add: dimension mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

ComplexMatrix scale(complex factor, const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.data().size(); ++i) out.data()[i] = factor * m.data()[i];
    return out;
}

double hermiticity_error(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermiticity_error: matrix not square");
    double err = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
    return err;
}

EigenDecomposition eigh(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigh: matrix not square");
    if (hermiticity_error(m) > 1e-10) throw std::invalid_argument("eigh: matrix not Hermitian");

    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    // Symmetrize so roundoff in the input cannot bias the rotations.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
        a(i, i) = a(i, i).real();
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale_ref = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale_ref = std::max(scale_ref, std::abs(a(i, j)));
    const double stop = std::max(scale_ref, 1.0) * 1e-15;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= stop * 1e-2) continue;
                // Phase factor makes the pivot real, then a real Jacobi rotation zeroes it.
                const complex phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns of the embedded unitary: col_p = (c, s/phase), col_q = (-s, c/phase).
                const complex up = s / phase;
                const complex uq = c / phase;
                for (std::size_t i = 0; i < n; ++i) {
                    const complex aip = a(i, p);
                    const complex aiq = a(i, q);
                    a(i, p) = c * aip + up * aiq;
                    a(i, q) = -s * aip + uq * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const complex apj = a(p, j);
                    const complex aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(up) * aqj;
                    a(q, j) = -s * apj + std::conj(uq) * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const complex vip = v(i, p);
                    const complex viq = v(i, q);
                    v(i, p) = c * vip + up * viq;
                    v(i, q) = -s * vip + uq * viq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix& m) {
    return eigh(m).values.front();
}

ComplexMatrix partial_trace_positions(const ComplexMatrix& m, std::size_t n_qubits,
                                      const std::vector<std::size_t>& keep_positions) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("partial_trace: matrix dimension does not match qubit count");

    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (std::find(keep_positions.begin(), keep_positions.end(), q) == keep_positions.end())
            traced.push_back(q);
    }
    const std::size_t k = keep_positions.size();
    const std::size_t t = traced.size();
    const std::size_t out_dim = std::size_t{1} << k;

    // Bit of qubit position q inside a basis index (position 0 = most significant).
    auto bit_shift = [n_qubits](std::size_t q) { return n_qubits - 1 - q; };

    ComplexMatrix out(out_dim, out_dim);
    for (std::size_t i = 0; i < out_dim; ++i) {
        for (std::size_t j = 0; j < out_dim; ++j) {
            complex sum = 0.0;
            for (std::size_t tr = 0; tr < (std::size_t{1} << t); ++tr) {
                std::size_t row = 0, col = 0;
                for (std::size_t b = 0; b < k; ++b) {
                    const std::size_t mask = std::size_t{1} << bit_shift(keep_positions[b]);
                    if ((i >> (k - 1 - b)) & 1u) row |= mask;
                    if ((j >> (k - 1 - b)) & 1u) col |= mask;
                }
                for (std::size_t b = 0; b < t; ++b) {
                    if ((tr >> (t - 1 - b)) & 1u) {
                        const std::size_t mask = std::size_t{1} << bit_shift(traced[b]);
                        row |= mask;
                        col |= mask;
                    }
                }
                sum += m(row, col);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    std::vector<std::size_t> positions;
    std::vector<std::string> kept_labels;
    // Walk qubit_order so kept qubits retain their original relative order.
    for (std::size_t q = 0; q < rho.qubit_order.size(); ++q) {
        if (std::find(keep.begin(), keep.end(), rho.qubit_order[q]) != keep.end()) {
            positions.push_back(q);
            kept_labels.push_back(rho.qubit_order[q]);
        }
    }
    for (const auto& label : keep) {
        if (std::find(rho.qubit_order.begin(), rho.qubit_order.end(), label) == rho.qubit_order.end())
            throw std::invalid_argument("partial_trace: unknown qubit label '" + label + "'");
    }
    return DensityMatrix{partial_trace_positions(rho.matrix, rho.qubit_order.size(), positions),
                         kept_labels};
}

}  // namespace qtel
