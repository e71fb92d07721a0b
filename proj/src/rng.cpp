#include "wyskew/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace wyskew {

std::vector<double> random_unit_vector(Rng &rng, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("random_unit_vector: zero dimension");
    std::vector<double> v(dim);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double &x : v) {
            x = rng.gaussian();
            norm2 += x * x;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double &x : v) x *= inv;
    return v;
}

HermitianMatrix random_hermitian(Rng &rng, std::size_t dim) {
    HermitianMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out.set(i, i, rng.gaussian());
        for (std::size_t j = i + 1; j < dim; ++j)
            out.set(i, j, Complex(rng.gaussian(), rng.gaussian()));
    }
    return out;
}

DensityMatrix random_density_matrix(Rng &rng, std::size_t dim) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    ComplexMatrix w = g * g.adjoint();
    const double tr = w.trace().real();
    w *= Complex(1.0 / tr, 0.0);
    return DensityMatrix(HermitianMatrix::symmetrized(w), 1.0);
}

PureState random_pure_state(Rng &rng, const std::vector<std::size_t> &local_dims) {
    std::size_t total = 1;
    for (std::size_t d : local_dims) total *= d;
    std::vector<Complex> amps(total);
    for (Complex &a : amps) a = Complex(rng.gaussian(), rng.gaussian());
    return PureState(local_dims, std::move(amps), PureState::Normalization::normalize);
}

}  // namespace wyskew
