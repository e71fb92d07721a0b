#include "wyskew/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wyskew {

namespace {

std::size_t product_of_dims(std::span<const std::size_t> dims) {
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("local dimension must be positive");
        total *= d;
    }
    return total;
}

double squared_norm(std::span<const Complex> v) {
    double sum = 0.0;
    for (const Complex &a : v) sum += std::norm(a);
    return sum;
}

}  // namespace

PureState::PureState(std::vector<std::size_t> local_dims, std::vector<Complex> amplitudes,
                     Normalization policy)
    : local_dims_(std::move(local_dims)), amplitudes_(std::move(amplitudes)) {
    if (local_dims_.empty()) throw std::invalid_argument("PureState: need at least one site");
    if (amplitudes_.size() != product_of_dims(local_dims_))
        throw std::invalid_argument("PureState: amplitude count does not match local dimensions");
    for (const Complex &a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("PureState: non-finite amplitude");
    }

    const double n2 = squared_norm(amplitudes_);
    if (std::abs(n2 - 1.0) <= 1e-12) return;  // already unit norm; keep amplitudes bit-exact
    if (policy == Normalization::strict) {
        std::ostringstream msg;
        msg << "PureState: squared norm " << n2 << " deviates from 1 by more than 1e-12";
        throw std::invalid_argument(msg.str());
    }
    if (n2 <= 0.0) throw std::invalid_argument("PureState: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (Complex &a : amplitudes_) a *= inv;
}

std::size_t PureState::site_stride(std::size_t site) const {
    if (site >= n_sites()) throw std::out_of_range("PureState: site index out of range");
    std::size_t stride = 1;
    for (std::size_t j = site + 1; j < n_sites(); ++j) stride *= local_dims_[j];
    return stride;
}

PureState tensor_product(const PureState &a, const PureState &b) {
    std::vector<std::size_t> dims = a.local_dims();
    dims.insert(dims.end(), b.local_dims().begin(), b.local_dims().end());
    std::vector<Complex> amps(a.total_dim() * b.total_dim());
    for (std::size_t i = 0; i < a.total_dim(); ++i)
        for (std::size_t j = 0; j < b.total_dim(); ++j)
            amps[i * b.total_dim() + j] = a.amplitude(i) * b.amplitude(j);
    return PureState(std::move(dims), std::move(amps), PureState::Normalization::normalize);
}

DensityMatrix::DensityMatrix(HermitianMatrix m, double declared_trace,
                             std::vector<std::size_t> local_dims)
    : matrix_(std::move(m)), declared_trace_(declared_trace), local_dims_(std::move(local_dims)) {
    if (!local_dims_.empty() && product_of_dims(local_dims_) != matrix_.dim())
        throw std::invalid_argument("DensityMatrix: local dimensions do not match matrix size");
    const double tr = matrix_.trace_real();
    if (std::abs(tr - declared_trace_) > 1e-10) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace " << tr << " deviates from declared " << declared_trace_;
        throw std::invalid_argument(msg.str());
    }
}

SiteSubset::SiteSubset(std::vector<std::size_t> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) throw std::invalid_argument("SiteSubset: empty");
    for (std::size_t k = 1; k < sites_.size(); ++k) {
        if (sites_[k] <= sites_[k - 1])
            throw std::invalid_argument("SiteSubset: indices must be strictly increasing");
    }
}

DensityMatrix pure_to_density(const PureState &psi) {
    const std::size_t n = psi.total_dim();
    HermitianMatrix rho(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j)
            rho.set(i, j, psi.amplitude(i) * std::conj(psi.amplitude(j)));
    }
    return DensityMatrix(std::move(rho), 1.0, psi.local_dims());
}

DensityMatrix partial_trace(const DensityMatrix &rho, const SiteSubset &keep) {
    if (!rho.has_structure())
        throw std::invalid_argument("partial_trace: density matrix carries no tensor structure");
    const std::vector<std::size_t> &dims = rho.local_dims();
    const std::size_t n_sites = dims.size();
    for (std::size_t s : keep.sites()) {
        if (s >= n_sites) throw std::out_of_range("partial_trace: kept site out of range");
    }

    std::vector<std::size_t> strides(n_sites);
    std::size_t acc = 1;
    for (std::size_t i = n_sites; i-- > 0;) {
        strides[i] = acc;
        acc *= dims[i];
    }

    std::vector<std::size_t> traced;
    for (std::size_t i = 0; i < n_sites; ++i) {
        if (!std::binary_search(keep.sites().begin(), keep.sites().end(), i)) traced.push_back(i);
    }

    // Flat offsets of every kept-index tuple and every traced-index tuple.
    auto enumerate_offsets = [&](const std::vector<std::size_t> &sites) {
        std::vector<std::size_t> offsets{0};
        for (std::size_t s : sites) {
            std::vector<std::size_t> next;
            next.reserve(offsets.size() * dims[s]);
            for (std::size_t base : offsets)
                for (std::size_t v = 0; v < dims[s]; ++v) next.push_back(base + v * strides[s]);
            offsets = std::move(next);
        }
        return offsets;
    };
    const std::vector<std::size_t> kept_offsets = enumerate_offsets(keep.sites());
    const std::vector<std::size_t> traced_offsets = enumerate_offsets(traced);

    const std::size_t out_dim = kept_offsets.size();
    HermitianMatrix out(out_dim);
    for (std::size_t r = 0; r < out_dim; ++r) {
        for (std::size_t c = r; c < out_dim; ++c) {
            Complex sum = 0.0;
            for (std::size_t t : traced_offsets)
                sum += rho.matrix()(kept_offsets[r] + t, kept_offsets[c] + t);
            out.set(r, c, sum);
        }
    }

    std::vector<std::size_t> kept_dims;
    kept_dims.reserve(keep.sites().size());
    for (std::size_t s : keep.sites()) kept_dims.push_back(dims[s]);
    return DensityMatrix(std::move(out), rho.declared_trace(), std::move(kept_dims));
}

DensityMatrix reduced_one_site(const PureState &psi, std::size_t site) {
    if (site >= psi.n_sites()) throw std::out_of_range("reduced_one_site: site out of range");
    const std::size_t d = psi.local_dim(site);
    const std::size_t stride = psi.site_stride(site);
    const std::size_t block = d * stride;
    const std::size_t n_blocks = psi.total_dim() / block;

    HermitianMatrix rho(d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            Complex sum = 0.0;
            for (std::size_t p = 0; p < n_blocks; ++p) {
                const std::size_t base = p * block;
                for (std::size_t q = 0; q < stride; ++q)
                    sum += psi.amplitude(base + a * stride + q) *
                           std::conj(psi.amplitude(base + b * stride + q));
            }
            rho.set(a, b, sum);
        }
    }
    return DensityMatrix(std::move(rho), 1.0, {d});
}

DensityMatrix one_particle_dm(const PureState &psi) {
    const std::size_t d = psi.local_dim(0);
    for (std::size_t i = 1; i < psi.n_sites(); ++i) {
        if (psi.local_dim(i) != d)
            throw std::invalid_argument("one_particle_dm: local dimensions must all be equal");
    }
    HermitianMatrix gamma(d);
    for (std::size_t i = 0; i < psi.n_sites(); ++i) gamma += reduced_one_site(psi, i).matrix();
    return DensityMatrix(std::move(gamma), static_cast<double>(psi.n_sites()), {d});
}

std::vector<Complex> apply_site_operator(const PureState &psi, const HermitianMatrix &k,
                                         std::size_t site) {
    if (site >= psi.n_sites()) throw std::out_of_range("apply_site_operator: site out of range");
    const std::size_t d = psi.local_dim(site);
    if (k.dim() != d)
        throw std::invalid_argument("apply_site_operator: observable dimension mismatch");
    const std::size_t stride = psi.site_stride(site);
    const std::size_t block = d * stride;
    const std::size_t n_blocks = psi.total_dim() / block;

    std::vector<Complex> out(psi.total_dim());
    for (std::size_t p = 0; p < n_blocks; ++p) {
        const std::size_t base = p * block;
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                const Complex kab = k(a, b);
                if (kab == Complex{}) continue;
                for (std::size_t q = 0; q < stride; ++q)
                    out[base + a * stride + q] += kab * psi.amplitude(base + b * stride + q);
            }
        }
    }
    return out;
}

CollectiveMoments collective_expectations(const PureState &psi,
                                          std::span<const HermitianMatrix> ks) {
    if (ks.size() != psi.n_sites())
        throw std::invalid_argument("collective_expectations: need one observable per site");

    std::vector<Complex> phi(psi.total_dim());
    for (std::size_t i = 0; i < psi.n_sites(); ++i) {
        const std::vector<Complex> term = apply_site_operator(psi, ks[i], i);
        for (std::size_t x = 0; x < phi.size(); ++x) phi[x] += term[x];
    }

    Complex first = 0.0;
    double second = 0.0;
    for (std::size_t x = 0; x < phi.size(); ++x) {
        first += std::conj(psi.amplitude(x)) * phi[x];
        second += std::norm(phi[x]);  // <(sum K)^2> = ||(sum K) psi||^2
    }
    check_real_trace(first);
    return CollectiveMoments{first.real(), second};
}

CollectiveMoments collective_expectations(const PureState &psi, const HermitianMatrix &k) {
    std::vector<HermitianMatrix> ks(psi.n_sites(), k);
    return collective_expectations(psi, ks);
}

}  // namespace wyskew
