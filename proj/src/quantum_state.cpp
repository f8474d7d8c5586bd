#include "symqfi/quantum_state.hpp"

#include <cmath>
#include <sstream>

#include "symqfi/errors.hpp"

namespace symqfi {

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.square() || m_.rows() == 0) throw InvalidArgument("DensityMatrix: must be a nonempty square matrix");
    const double asym = hermitian_asymmetry(m_);
    const double tr_err = std::abs(m_.trace() - cplx{1.0});
    if (asym > 1e-12 || tr_err > 1e-12) {
        std::ostringstream os;
        os << "DensityMatrix: invariant violated (asymmetry " << asym << ", |tr - 1| " << tr_err << ")";
        throw InvalidArgument(os.str());
    }
}

PureState source_state(const DiscretePSF& psf, Point2 r) {
    if (psf.momenta.empty()) throw InvalidArgument("source_state: PSF has no momenta");
    const double norm = 1.0 / std::sqrt(static_cast<double>(psf.momenta.size()));
    PureState s;
    s.amplitudes.reserve(psf.momenta.size());
    for (const auto& p : psf.momenta) s.amplitudes.push_back(std::polar(norm, -dot(p, r)));
    return s;
}

std::vector<PureState> source_states(const std::vector<Point2>& points, const DiscretePSF& psf) {
    std::vector<PureState> out;
    out.reserve(points.size());
    for (const auto& r : points) out.push_back(source_state(psf, r));
    return out;
}

DensityMatrix density_matrix(const std::vector<Point2>& points, const DiscretePSF& psf) {
    if (points.empty()) throw InvalidArgument("density_matrix: constellation is empty");
    const std::size_t n = psf.momenta.size();
    const double w = 1.0 / static_cast<double>(points.size());
    ComplexMatrix rho(n, n);
    const auto& k = kernels();
    for (const auto& r : points) {
        const PureState s = source_state(psf, r);
        // rho_i. += w psi_i conj(psi)
        for (std::size_t i = 0; i < n; ++i)
            k.axpy_conj(w * s.amplitudes[i], s.amplitudes.data(), rho.row(i).data(), n);
    }
    // Clean rounding so the stored matrix is exactly Hermitian.
    for (std::size_t i = 0; i < n; ++i) {
        rho(i, i) = rho(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = avg;
            rho(j, i) = std::conj(avg);
        }
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix density_matrix(const Constellation& c, const DiscretePSF& psf) {
    return density_matrix(c.points, psf);
}

cplx overlap(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("overlap: state dimensions differ");
    return dot_conj(a.amplitudes, b.amplitudes);
}

ComplexMatrix permutation_matrix(std::span<const std::size_t> perm) {
    ComplexMatrix p(perm.size(), perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        if (perm[k] >= perm.size()) throw InvalidArgument("permutation_matrix: index out of range");
        if (norm_sq(p.row(perm[k])) != 0.0)
            throw InvalidArgument("permutation_matrix: repeated index");
        p(perm[k], k) = 1.0;
    }
    return p;
}

}  // namespace symqfi
