#pragma once

// Single-photon states over the momentum qudit basis |j>, j following the
// DiscretePSF list order, and the equal-weight mixture over sources.

#include <span>
#include <vector>

#include "symqfi/constellation.hpp"
#include "symqfi/linalg.hpp"

namespace symqfi {

struct PureState {
    CVector amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

/// Hermitian, unit-trace, PSD matrix. Construction checks the invariants.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }

private:
    ComplexMatrix m_;
};

/// amplitude_j = exp(-i p_j . r) / sqrt(N).
PureState source_state(const DiscretePSF& psf, Point2 r);

std::vector<PureState> source_states(const std::vector<Point2>& points, const DiscretePSF& psf);

/// (1/N_S) sum_i |psi_i><psi_i|.
DensityMatrix density_matrix(const std::vector<Point2>& points, const DiscretePSF& psf);
DensityMatrix density_matrix(const Constellation& c, const DiscretePSF& psf);

/// <a|b>, conjugate-linear in a.
cplx overlap(const PureState& a, const PureState& b);

/// P with P|k> = |perm[k]>.
ComplexMatrix permutation_matrix(std::span<const std::size_t> perm);

}  // namespace symqfi
