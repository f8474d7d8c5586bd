#pragma once

// Symmetric logarithmic derivatives, the quantum Fisher information matrix
// and classical Fisher information of projective measurements, plus the
// closed-form QFI values for the symmetric constellations.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symqfi/constellation.hpp"
#include "symqfi/linalg.hpp"
#include "symqfi/quantum_state.hpp"

namespace symqfi {

/// Small dense real matrix, row-major.
struct RealMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    RealMatrix() = default;
    explicit RealMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

double max_abs_diff(const RealMatrix& x, const RealMatrix& y);
double min_eigenvalue(const RealMatrix& m);

struct ParameterVector {
    std::vector<std::string> names;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    std::size_t index_of(const std::string& name) const;
};

using Geometry = std::pair<Constellation, DiscretePSF>;

/// theta -> rho(theta) with everything else held fixed.
struct ModelFamily {
    std::string name;
    std::vector<std::string> parameter_names;
    std::size_t dim = 0;
    // Valid parameter domain (open set).
    std::function<bool(std::span<const double>)> valid;
    std::function<DensityMatrix(std::span<const double>)> build;
    // Source/PSF geometry for symmetric models; empty for abstract models.
    std::function<Geometry(std::span<const double>)> geometry;

    ParameterVector parameters(std::vector<double> values) const;
    DensityMatrix operator()(const ParameterVector& theta) const;
};

/// Two sources at +-r(cos source_angle, sin source_angle), PSF at +-p
/// rotated by psf_angle. Parameter: r.
ModelFamily pair_model(double p, double source_angle = 0.0, double psf_angle = 0.0);
/// Corners (+-x0, +-y0), PSF (+-px, +-py). Parameters: x0, y0.
ModelFamily rectangle_model(double px, double py);
/// N sources on a circle of radius r, PSF on a circle of radius p.
/// Parameter: r.
ModelFamily ring_model(int n, double p, double source_phase = 0.0, double psf_phase = 0.0);
/// Explicit sources scaled by a single factor. Parameter: scale.
ModelFamily scaled_points_model(Constellation c, DiscretePSF psf);
/// rho independent of its single parameter "t".
ModelFamily constant_model(DensityMatrix rho);

inline constexpr double kRelativeStep = 1e-6;
inline constexpr double kSupportEpsilon = 1e-10;
inline constexpr double kMinProbability = 1e-12;

double finite_difference_step(double value);

/// Central difference of rho in parameter mu with step
/// h_scale * max(1, |theta_mu|) (h_scale defaults to kRelativeStep).
ComplexMatrix drho(const ModelFamily& model, const ParameterVector& theta, std::size_t mu,
                   double h_scale = kRelativeStep);

/// SLD from the spectral formula restricted to lambda_m + lambda_n > kSupportEpsilon.
ComplexMatrix sld(const DensityMatrix& rho, const ComplexMatrix& drho);
ComplexMatrix sld(const HermitianEigen& rho_eigen, const ComplexMatrix& drho);

/// max |P (drho - (L rho + rho L)/2) P| with P the support projector of rho.
double sld_residual(const DensityMatrix& rho, const ComplexMatrix& drho, const ComplexMatrix& l);

/// F_{mu nu} = Re tr(L_mu L_nu rho), symmetrized.
RealMatrix qfim(const ModelFamily& model, const ParameterVector& theta, double h_scale = kRelativeStep);

/// q_n = <b_n|rho|b_n> for the columns b_n of an orthonormal basis.
std::vector<double> outcome_probabilities(const DensityMatrix& rho, const ComplexMatrix& basis);

/// Fisher information of the outcome distribution of the basis measurement;
/// outcomes with q_n < kMinProbability are skipped.
RealMatrix classical_fi(const ModelFamily& model, const ParameterVector& theta, const ComplexMatrix& basis,
                        double h_scale = kRelativeStep);

// Measurement bases (columns are the measured vectors).
ComplexMatrix eigenbasis(const ModelFamily& model, const ParameterVector& theta);
ComplexMatrix momentum_basis(std::size_t n);
/// Character basis for a symmetric model (requires geometry).
ComplexMatrix symmetric_basis(const ModelFamily& model, const ParameterVector& theta);
/// Outcome n of the interferometer U is output mode n: b_n = conj(row n of U).
ComplexMatrix basis_from_unitary(const ComplexMatrix& u);

struct PairOnAxis {
    double p;
};
struct PairOffAxis {
    double p;
    double theta;   // source angle
    double theta0;  // PSF angle
};
struct RectangleCase {
    double px;
    double py;
};
struct RingCase {
    int n;
    double p;
};
using AnalyticCase = std::variant<PairOnAxis, PairOffAxis, RectangleCase, RingCase>;

/// 1x1 for the single-parameter cases, 2x2 for the rectangle.
RealMatrix analytic_qfi(const AnalyticCase& c);

/// Fourier amplitudes of the ring: a_k = (1/N) sum_n e^{2 pi i n k/N} e^{-i p r cos(2 pi n/N)}
/// and their r-derivatives.
struct RingSpectrum {
    std::vector<cplx> a;
    std::vector<cplx> da;
};
RingSpectrum ring_spectrum(int n, double p, double r);

/// lambda_k = |a_k|^2.
std::vector<double> ring_eigenvalues(int n, double p, double r);
/// sum_k 4 |a_k'|^2 (the Parseval route).
double ring_parseval_qfi(int n, double p, double r);
/// sum_k (lambda_k')^2 / lambda_k evaluated from the amplitudes.
double ring_spectral_qfi(int n, double p, double r);

}  // namespace symqfi
