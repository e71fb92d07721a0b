#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wyskew {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. General (not necessarily Hermitian);
/// used for products, commutators and eigenvector sets.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> data() const { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Square complex matrix with the Hermitian symmetry enforced in storage:
/// entry (i,j) is always the exact conjugate of entry (j,i) and diagonal
/// imaginary parts are exactly zero. All entries are finite.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(std::size_t dim) : mat_(dim, dim) {}

    /// Symmetrizes m as (m + m†)/2. Throws std::invalid_argument if m is not
    /// square or contains non-finite entries.
    static HermitianMatrix symmetrized(const ComplexMatrix &m);

    static HermitianMatrix identity(std::size_t dim);
    static HermitianMatrix diagonal(std::span<const double> entries);

    std::size_t dim() const { return mat_.rows(); }

    const Complex &operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

    /// Stores v at (i,j) and conj(v) at (j,i); on the diagonal the imaginary
    /// part must be zero (within exact comparison, it is dropped after a
    /// finite check). Throws on non-finite values.
    void set(std::size_t i, std::size_t j, Complex v);

    const ComplexMatrix &matrix() const { return mat_; }
    double frobenius_norm() const { return mat_.frobenius_norm(); }
    double trace_real() const { return mat_.trace().real(); }

    HermitianMatrix &operator+=(const HermitianMatrix &other);
    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix &b) { return a += b; }

    /// Real scalar multiple (stays Hermitian).
    HermitianMatrix scaled(double s) const;

  private:
    ComplexMatrix mat_;
};

/// Eigenvalues ascending; eigenvectors is a unitary matrix whose k-th column
/// is the eigenvector of eigenvalues[k].
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    /// Sum of eigenvalue * v v^dagger, for reconstruction checks.
    ComplexMatrix reconstruct() const;
};

/// Cyclic complex Jacobi eigendecomposition. Sweeps until the off-diagonal
/// Frobenius norm drops below 1e-12 * ||A||_F; throws std::runtime_error
/// naming the residual if that does not happen within max_sweeps.
SpectralDecomposition eig_hermitian(const HermitianMatrix &a, std::size_t max_sweeps = 100);

/// Principal square root of a positive-semidefinite matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything below -1e-10 is rejected with a
/// std::runtime_error reporting the offending eigenvalue.
HermitianMatrix sqrt_psd(const HermitianMatrix &a);

/// Tr(A * B * ...), all factors square with a common dimension.
Complex trace_product(std::span<const HermitianMatrix *const> factors);

template <typename... Rest>
Complex trace_product(const HermitianMatrix &first, const Rest &...rest) {
    const HermitianMatrix *factors[] = {&first, (&rest)...};
    return trace_product(std::span<const HermitianMatrix *const>(factors, 1 + sizeof...(rest)));
}

/// Throws std::runtime_error unless |imag| <= 1e-12 * max(1, |re|).
void check_real_trace(Complex t);

/// As trace_product, for alternating Hermitian patterns whose trace is real
/// by symmetry; asserts the imaginary part is negligible before discarding it.
template <typename... Rest>
double trace_product_real(const HermitianMatrix &first, const Rest &...rest) {
    Complex t = trace_product(first, rest...);
    check_real_trace(t);
    return t.real();
}

/// AB - BA; anti-Hermitian for Hermitian inputs.
ComplexMatrix commutator(const HermitianMatrix &a, const HermitianMatrix &b);

/// (1/2) Tr([A,B]^2). Real and <= 0 for Hermitian A, B (the square of an
/// anti-Hermitian matrix is negative semidefinite).
double half_trace_commutator_squared(const HermitianMatrix &a, const HermitianMatrix &b);

}  // namespace wyskew
