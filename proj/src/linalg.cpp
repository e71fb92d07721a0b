#include "wyskew/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wyskew {

namespace {

bool is_finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

double off_diagonal_norm(const ComplexMatrix &m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i != j) sum += std::norm(m(i, j));
        }
    }
    return std::sqrt(sum);
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace: matrix is not square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const Complex &v : data_) sum += std::norm(v);
    return std::sqrt(sum);
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix add: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix subtract: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (Complex &v : data_) v *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix multiply: shape mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("HermitianMatrix: matrix is not square");
    HermitianMatrix out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            if (!is_finite(m(i, j)) || !is_finite(m(j, i)))
                throw std::invalid_argument("HermitianMatrix: non-finite entry");
            out.set(i, j, 0.5 * (m(i, j) + std::conj(m(j, i))));
        }
    }
    return out;
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
    HermitianMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) out.set(i, i, 1.0);
    return out;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> entries) {
    HermitianMatrix out(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) out.set(i, i, entries[i]);
    return out;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex v) {
    if (!is_finite(v)) throw std::invalid_argument("HermitianMatrix: non-finite entry");
    if (i == j) {
        mat_(i, i) = Complex(v.real(), 0.0);
    } else {
        mat_(i, j) = v;
        mat_(j, i) = std::conj(v);
    }
}

HermitianMatrix &HermitianMatrix::operator+=(const HermitianMatrix &other) {
    if (dim() != other.dim()) throw std::invalid_argument("HermitianMatrix add: dim mismatch");
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i; j < dim(); ++j) set(i, j, mat_(i, j) + other.mat_(i, j));
    return *this;
}

HermitianMatrix HermitianMatrix::scaled(double s) const {
    HermitianMatrix out(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i; j < dim(); ++j) out.set(i, j, s * mat_(i, j));
    return out;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
    const std::size_t n = eigenvalues.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = eigenvectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += eigenvalues[k] * vik * std::conj(eigenvectors(j, k));
        }
    }
    return out;
}

SpectralDecomposition eig_hermitian(const HermitianMatrix &a, std::size_t max_sweeps) {
    const std::size_t n = a.dim();
    ComplexMatrix m = a.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = 1e-12 * a.frobenius_norm();
    bool converged = off_diagonal_norm(m) <= threshold;

    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex mpq = m(p, q);
                const double r = std::abs(mpq);
                if (r == 0.0) continue;
                // Phase e^{i theta} of the pivot, then a real rotation of the
                // smaller angle (Golub & Van Loan style tau/t recipe).
                const Complex phase = mpq / r;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex sp = s * phase;        // J(p,q) entry
                const Complex spc = std::conj(sp);   // -J(q,p) entry

                // A <- A J   (columns p, q)
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = m(i, p);
                    const Complex aiq = m(i, q);
                    m(i, p) = c * aip - spc * aiq;
                    m(i, q) = sp * aip + c * aiq;
                }
                // A <- J^dagger A   (rows p, q)
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = m(p, j);
                    const Complex aqj = m(q, j);
                    m(p, j) = c * apj - sp * aqj;
                    m(q, j) = spc * apj + c * aqj;
                }
                // V <- V J
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip - spc * viq;
                    v(i, q) = sp * vip + c * viq;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
            }
        }
        converged = off_diagonal_norm(m) <= threshold;
    }

    if (!converged) {
        std::ostringstream msg;
        msg << "eig_hermitian: no convergence after " << max_sweeps
            << " sweeps; residual off-diagonal norm " << off_diagonal_norm(m) << " exceeds "
            << threshold;
        throw std::runtime_error(msg.str());
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = m(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

HermitianMatrix sqrt_psd(const HermitianMatrix &a) {
    SpectralDecomposition es = eig_hermitian(a);
    std::vector<double> roots(es.eigenvalues.size());
    for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
        double lambda = es.eigenvalues[k];
        if (lambda < -1e-10) {
            std::ostringstream msg;
            msg << "sqrt_psd: matrix is not positive semidefinite, eigenvalue " << lambda;
            throw std::runtime_error(msg.str());
        }
        roots[k] = lambda < 0.0 ? 0.0 : std::sqrt(lambda);
    }

    const std::size_t n = a.dim();
    ComplexMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (roots[k] == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = es.eigenvectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) += roots[k] * vik * std::conj(es.eigenvectors(j, k));
        }
    }
    return HermitianMatrix::symmetrized(r);
}

Complex trace_product(std::span<const HermitianMatrix *const> factors) {
    if (factors.empty()) throw std::invalid_argument("trace_product: no factors");
    const std::size_t n = factors.front()->dim();
    for (const HermitianMatrix *f : factors) {
        if (f->dim() != n) throw std::invalid_argument("trace_product: dimension mismatch");
    }
    if (factors.size() == 1) return factors.front()->matrix().trace();

    ComplexMatrix acc = factors[0]->matrix() * factors[1]->matrix();
    for (std::size_t k = 2; k < factors.size(); ++k) acc = acc * factors[k]->matrix();
    return acc.trace();
}

void check_real_trace(Complex t) {
    if (std::abs(t.imag()) > 1e-12 * std::max(1.0, std::abs(t.real()))) {
        std::ostringstream msg;
        msg << "trace expected to be real, got imaginary part " << t.imag();
        throw std::runtime_error(msg.str());
    }
}

ComplexMatrix commutator(const HermitianMatrix &a, const HermitianMatrix &b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("commutator: dimension mismatch");
    return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

double half_trace_commutator_squared(const HermitianMatrix &a, const HermitianMatrix &b) {
    const ComplexMatrix c = commutator(a, b);
    const Complex t = (c * c).trace();
    check_real_trace(t);
    return 0.5 * t.real();
}

}  // namespace wyskew
