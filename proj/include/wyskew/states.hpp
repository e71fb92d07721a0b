#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wyskew/linalg.hpp"

namespace wyskew {

/// Normalized state vector on a tensor product of finite-dimensional local
/// spaces. Flat indexing is lexicographic with site 0 most significant:
/// |s0 s1 ... s_{N-1}>  <->  sum_i s_i * prod_{j>i} d_j.
class PureState {
  public:
    enum class Normalization {
        strict,     ///< reject if | ||amps||^2 - 1 | > 1e-12
        normalize,  ///< rescale to unit norm (zero vector rejected)
    };
    // Amplitudes already within the strict tolerance are stored unchanged
    // under either policy, so serialization round-trips bit-exactly.

    PureState(std::vector<std::size_t> local_dims, std::vector<Complex> amplitudes,
              Normalization policy = Normalization::strict);

    std::size_t n_sites() const { return local_dims_.size(); }
    std::size_t local_dim(std::size_t site) const { return local_dims_[site]; }
    const std::vector<std::size_t> &local_dims() const { return local_dims_; }
    std::size_t total_dim() const { return amplitudes_.size(); }

    Complex amplitude(std::size_t flat_index) const { return amplitudes_[flat_index]; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }

    /// Row stride of one unit of site's index in the flat layout.
    std::size_t site_stride(std::size_t site) const;

  private:
    std::vector<std::size_t> local_dims_;
    std::vector<Complex> amplitudes_;
};

/// Tensor product |a> (x) |b>, with a's sites in front (most significant).
PureState tensor_product(const PureState &a, const PureState &b);

/// Positive-semidefinite Hermitian matrix of known trace, optionally carrying
/// a tensor-product structure (needed for partial traces). PSD is enforced at
/// the point of use: sqrt_psd rejects spectra below the clamping window.
class DensityMatrix {
  public:
    DensityMatrix(HermitianMatrix m, double declared_trace,
                  std::vector<std::size_t> local_dims = {});

    const HermitianMatrix &matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.dim(); }
    double declared_trace() const { return declared_trace_; }
    const std::vector<std::size_t> &local_dims() const { return local_dims_; }
    bool has_structure() const { return !local_dims_.empty(); }

  private:
    HermitianMatrix matrix_;
    double declared_trace_;
    std::vector<std::size_t> local_dims_;
};

/// Strictly increasing, non-empty set of site indices to keep in a partial
/// trace.
class SiteSubset {
  public:
    explicit SiteSubset(std::vector<std::size_t> sites);
    const std::vector<std::size_t> &sites() const { return sites_; }

  private:
    std::vector<std::size_t> sites_;
};

/// |psi><psi| with psi's tensor structure attached.
DensityMatrix pure_to_density(const PureState &psi);

/// Traces out every site not in keep; the result inherits the kept sites'
/// dimensions in their original order.
DensityMatrix partial_trace(const DensityMatrix &rho, const SiteSubset &keep);

/// Reduced density matrix on one site, contracted directly from the
/// amplitudes without forming |psi><psi|.
DensityMatrix reduced_one_site(const PureState &psi, std::size_t site);

/// gamma = sum_i rho_i (trace N). Requires all local dimensions equal.
DensityMatrix one_particle_dm(const PureState &psi);

struct CollectiveMoments {
    double first;   ///< <psi| sum_i K_i |psi>
    double second;  ///< <psi| (sum_i K_i)^2 |psi>
};

/// Moments of the collective observable sum_i K_i, with the same K on every
/// site; computed by applying K site-wise to the amplitude vector, never by
/// materializing the full tensor-product operator.
CollectiveMoments collective_expectations(const PureState &psi, const HermitianMatrix &k);

/// Per-site observables variant (ks.size() == n_sites, ks[i].dim == d_i).
CollectiveMoments collective_expectations(const PureState &psi,
                                          std::span<const HermitianMatrix> ks);

/// (K acting on one site, identity elsewhere) applied to the amplitudes.
std::vector<Complex> apply_site_operator(const PureState &psi, const HermitianMatrix &k,
                                         std::size_t site);

}  // namespace wyskew
