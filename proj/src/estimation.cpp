#include "symqfi/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "symqfi/errors.hpp"
#include "symqfi/symmetry.hpp"

namespace symqfi {

double max_abs_diff(const RealMatrix& x, const RealMatrix& y) {
    if (x.n != y.n) throw InvalidArgument("max_abs_diff: sizes differ");
    double m = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

double min_eigenvalue(const RealMatrix& m) {
    ComplexMatrix c(m.n, m.n);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) c(i, j) = 0.5 * (m(i, j) + m(j, i));
    return eig_hermitian(c).values.front();
}

std::size_t ParameterVector::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw InvalidArgument("unknown parameter '" + name + "'");
}

ParameterVector ModelFamily::parameters(std::vector<double> values) const {
    if (values.size() != parameter_names.size()) throw InvalidArgument(name + ": wrong number of parameters");
    return {parameter_names, std::move(values)};
}

DensityMatrix ModelFamily::operator()(const ParameterVector& theta) const {
    if (theta.names != parameter_names) throw InvalidArgument(name + ": parameter names do not match the model");
    if (!valid(theta.values)) throw InvalidArgument(name + ": parameters outside the model domain");
    return build(theta.values);
}

namespace {

ModelFamily from_geometry(std::string name, std::vector<std::string> params, std::size_t dim,
                          std::function<bool(std::span<const double>)> valid,
                          std::function<Geometry(std::span<const double>)> geometry) {
    ModelFamily m;
    m.name = std::move(name);
    m.parameter_names = std::move(params);
    m.dim = dim;
    m.valid = std::move(valid);
    m.geometry = geometry;
    m.build = [geometry](std::span<const double> v) {
        const auto [c, psf] = geometry(v);
        return density_matrix(c.points, psf);
    };
    return m;
}

// Zero separation is a valid state; derivatives there are one-sided and
// rejected by drho's interior check.
bool all_nonnegative(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0 && std::isfinite(x); });
}

}  // namespace

ModelFamily pair_model(double p, double source_angle, double psf_angle) {
    if (!(p > 0.0)) throw InvalidArgument("pair_model: p must be positive");
    return from_geometry("pair", {"r"}, 2, all_nonnegative, [=](std::span<const double> v) {
        Constellation c = make_pair(v[0], source_angle);
        DiscretePSF psf = matching_psf(c, p, psf_angle);
        return Geometry{std::move(c), std::move(psf)};
    });
}

ModelFamily rectangle_model(double px, double py) {
    const DiscretePSF psf = rect_psf(px, py);
    return from_geometry("rectangle", {"x0", "y0"}, 4, all_nonnegative, [psf](std::span<const double> v) {
        return Geometry{make_rectangle(v[0], v[1]), psf};
    });
}

ModelFamily ring_model(int n, double p, double source_phase, double psf_phase) {
    if (n < 2) throw InvalidArgument("ring_model: N must be at least 2");
    if (!(p > 0.0)) throw InvalidArgument("ring_model: p must be positive");
    return from_geometry("ring", {"r"}, static_cast<std::size_t>(n), all_nonnegative, [=](std::span<const double> v) {
        Constellation c = make_ring(n, v[0], source_phase);
        DiscretePSF psf = matching_psf(c, p, psf_phase);
        return Geometry{std::move(c), std::move(psf)};
    });
}

ModelFamily scaled_points_model(Constellation c, DiscretePSF psf) {
    if (c.points.empty()) throw InvalidArgument("scaled_points_model: no sources");
    const std::size_t dim = psf.momenta.size();
    return from_geometry("points", {"scale"}, dim, all_nonnegative,
                         [c = std::move(c), psf = std::move(psf)](std::span<const double> v) {
                             Constellation scaled = c;
                             for (auto& pt : scaled.points) pt = {pt.x * v[0], pt.y * v[0]};
                             return Geometry{std::move(scaled), psf};
                         });
}

ModelFamily constant_model(DensityMatrix rho) {
    ModelFamily m;
    m.name = "constant";
    m.parameter_names = {"t"};
    m.dim = rho.dim();
    m.valid = [](std::span<const double> v) { return std::isfinite(v[0]); };
    m.build = [rho = std::move(rho)](std::span<const double>) { return rho; };
    return m;
}

double finite_difference_step(double value) { return kRelativeStep * std::max(1.0, std::abs(value)); }

ComplexMatrix drho(const ModelFamily& model, const ParameterVector& theta, std::size_t mu, double h_scale) {
    if (mu >= theta.size()) throw InvalidArgument("drho: parameter index out of range");
    if (theta.names != model.parameter_names) throw InvalidArgument("drho: parameter names do not match the model");
    const double h = h_scale * std::max(1.0, std::abs(theta.values[mu]));
    std::vector<double> plus = theta.values, minus = theta.values;
    plus[mu] += h;
    minus[mu] -= h;
    if (!model.valid(theta.values) || !model.valid(plus) || !model.valid(minus)) {
        std::ostringstream os;
        os << "drho: " << theta.names[mu] << " = " << theta.values[mu] << " is not interior to the " << model.name
           << " domain for step " << h;
        throw InvalidArgument(os.str());
    }
    ComplexMatrix d = model.build(plus).matrix() - model.build(minus).matrix();
    d *= 1.0 / (2.0 * h);
    const std::size_t n = d.rows();
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = d(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (d(i, j) + std::conj(d(j, i)));
            d(i, j) = avg;
            d(j, i) = std::conj(avg);
        }
    }
    return d;
}

ComplexMatrix sld(const HermitianEigen& eig, const ComplexMatrix& d) {
    const std::size_t n = d.rows();
    if (!d.square() || n != eig.values.size()) throw InvalidArgument("sld: dimension mismatch");
    const ComplexMatrix& v = eig.vectors;
    ComplexMatrix in_basis = v.adjoint() * d * v;
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k < n; ++k) {
            const double s = eig.values[m] + eig.values[k];
            in_basis(m, k) = s > kSupportEpsilon ? in_basis(m, k) * (2.0 / s) : cplx{};
        }
    }
    ComplexMatrix l = v * in_basis * v.adjoint();
    for (std::size_t i = 0; i < n; ++i) {
        l(i, i) = l(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (l(i, j) + std::conj(l(j, i)));
            l(i, j) = avg;
            l(j, i) = std::conj(avg);
        }
    }
    return l;
}

ComplexMatrix sld(const DensityMatrix& rho, const ComplexMatrix& d) {
    if (hermitian_asymmetry(d) > 1e-9) throw InvalidArgument("sld: drho is not Hermitian");
    return sld(eig_hermitian(rho.matrix()), d);
}

double sld_residual(const DensityMatrix& rho, const ComplexMatrix& d, const ComplexMatrix& l) {
    const auto eig = eig_hermitian(rho.matrix());
    const std::size_t n = rho.dim();
    ComplexMatrix proj(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (eig.values[k] <= kSupportEpsilon) continue;
        const CVector v = eig.vectors.column(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) proj(i, j) += v[i] * std::conj(v[j]);
    }
    const ComplexMatrix& r = rho.matrix();
    ComplexMatrix lyap = (l * r + r * l) * 0.5;
    return max_abs(proj * (d - lyap) * proj);
}

RealMatrix qfim(const ModelFamily& model, const ParameterVector& theta, double h_scale) {
    const DensityMatrix rho = model(theta);
    const auto eig = eig_hermitian(rho.matrix());
    const std::size_t k = theta.size();
    std::vector<ComplexMatrix> slds;
    slds.reserve(k);
    for (std::size_t mu = 0; mu < k; ++mu) slds.push_back(sld(eig, drho(model, theta, mu, h_scale)));
    RealMatrix f(k);
    for (std::size_t mu = 0; mu < k; ++mu) {
        const ComplexMatrix lr = slds[mu] * rho.matrix();
        for (std::size_t nu = 0; nu < k; ++nu) f(mu, nu) = (slds[nu] * lr).trace().real();
    }
    // tr(L_nu L_mu rho) is the conjugate of tr(L_mu L_nu rho); the real parts agree
    // up to rounding, symmetrize to remove it.
    for (std::size_t mu = 0; mu < k; ++mu)
        for (std::size_t nu = mu + 1; nu < k; ++nu) f(mu, nu) = f(nu, mu) = 0.5 * (f(mu, nu) + f(nu, mu));
    return f;
}

static void require_orthonormal(const ComplexMatrix& basis, std::size_t dim) {
    if (basis.rows() != dim || basis.cols() != dim) throw InvalidArgument("measurement basis has the wrong shape");
    const double res = unitarity_residual(basis);
    if (res > 1e-10) {
        std::ostringstream os;
        os << "measurement basis is not orthonormal (residual " << res << ")";
        throw InvalidArgument(os.str());
    }
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const ComplexMatrix& basis) {
    std::vector<double> q(basis.cols());
    for (std::size_t n = 0; n < basis.cols(); ++n) {
        const CVector b = basis.column(n);
        q[n] = sandwich(b, rho.matrix(), b).real();
    }
    return q;
}

RealMatrix classical_fi(const ModelFamily& model, const ParameterVector& theta, const ComplexMatrix& basis,
                        double h_scale) {
    require_orthonormal(basis, model.dim);
    const std::size_t k = theta.size();
    const std::vector<double> q = outcome_probabilities(model(theta), basis);
    std::vector<std::vector<double>> dq(k);
    for (std::size_t mu = 0; mu < k; ++mu) {
        const ComplexMatrix d = drho(model, theta, mu, h_scale);
        dq[mu].resize(q.size());
        for (std::size_t n = 0; n < q.size(); ++n) {
            const CVector b = basis.column(n);
            dq[mu][n] = sandwich(b, d, b).real();
        }
    }
    RealMatrix f(k);
    for (std::size_t n = 0; n < q.size(); ++n) {
        if (q[n] < kMinProbability) continue;
        for (std::size_t mu = 0; mu < k; ++mu)
            for (std::size_t nu = 0; nu < k; ++nu) f(mu, nu) += dq[mu][n] * dq[nu][n] / q[n];
    }
    return f;
}

ComplexMatrix eigenbasis(const ModelFamily& model, const ParameterVector& theta) {
    return eig_hermitian(model(theta).matrix()).vectors;
}

ComplexMatrix momentum_basis(std::size_t n) { return ComplexMatrix::identity(n); }

ComplexMatrix symmetric_basis(const ModelFamily& model, const ParameterVector& theta) {
    if (!model.geometry) throw InvalidArgument(model.name + ": model has no symmetry geometry");
    const auto [c, psf] = model.geometry(theta.values);
    const auto mom = validate_symmetry(c.symmetry, psf.momenta);
    if (!mom) throw InvalidArgument(model.name + ": " + mom.message);
    return character_basis(c.symmetry.group(), mom.permutations);
}

ComplexMatrix basis_from_unitary(const ComplexMatrix& u) { return u.adjoint(); }

RealMatrix analytic_qfi(const AnalyticCase& c) {
    return std::visit(
        [](const auto& v) -> RealMatrix {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RectangleCase>) {
                RealMatrix m(2);
                m(0, 0) = 4.0 * v.px * v.px;
                m(1, 1) = 4.0 * v.py * v.py;
                return m;
            } else {
                RealMatrix m(1);
                if constexpr (std::is_same_v<T, PairOnAxis>) {
                    m(0, 0) = 4.0 * v.p * v.p;
                } else if constexpr (std::is_same_v<T, PairOffAxis>) {
                    const double c = std::cos(v.theta - v.theta0);
                    m(0, 0) = 4.0 * v.p * v.p * c * c;
                } else {
                    if (v.n < 2) throw InvalidArgument("analytic_qfi: ring needs N >= 2");
                    m(0, 0) = (v.n == 2 ? 4.0 : 2.0) * v.p * v.p;
                }
                return m;
            }
        },
        c);
}

RingSpectrum ring_spectrum(int n, double p, double r) {
    if (n < 2) throw InvalidArgument("ring_spectrum: N must be at least 2");
    RingSpectrum s{std::vector<cplx>(static_cast<std::size_t>(n)), std::vector<cplx>(static_cast<std::size_t>(n))};
    const double step = 2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
        cplx a = 0.0, da = 0.0;
        for (int m = 0; m < n; ++m) {
            const double c = std::cos(m * step);
            // e^{i m k step} e^{-i p r c}, phase reduced mod N in the first factor
            const cplx f = std::polar(1.0, step * ((m * k) % n) - p * r * c);
            a += f;
            da += f * cplx{0.0, -p * c};
        }
        s.a[static_cast<std::size_t>(k)] = a / static_cast<double>(n);
        s.da[static_cast<std::size_t>(k)] = da / static_cast<double>(n);
    }
    return s;
}

std::vector<double> ring_eigenvalues(int n, double p, double r) {
    const auto s = ring_spectrum(n, p, r);
    std::vector<double> lam(s.a.size());
    for (std::size_t k = 0; k < lam.size(); ++k) lam[k] = std::norm(s.a[k]);
    return lam;
}

double ring_parseval_qfi(int n, double p, double r) {
    const auto s = ring_spectrum(n, p, r);
    double q = 0.0;
    for (const auto& d : s.da) q += 4.0 * std::norm(d);
    return q;
}

double ring_spectral_qfi(int n, double p, double r) {
    const auto s = ring_spectrum(n, p, r);
    double q = 0.0;
    for (std::size_t k = 0; k < s.a.size(); ++k) {
        const double lam = std::norm(s.a[k]);
        if (lam < kSupportEpsilon) continue;
        const double dlam = 2.0 * (std::conj(s.a[k]) * s.da[k]).real();
        q += dlam * dlam / lam;
    }
    return q;
}

}  // namespace symqfi
