#include "symqfi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "symqfi/errors.hpp"

namespace symqfi {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw InvalidArgument("ComplexMatrix: entry count does not match rows*cols");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InvalidArgument("ComplexMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const CVector> cols) {
    if (cols.empty()) return {};
    ComplexMatrix m(cols[0].size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != m.rows()) throw InvalidArgument("from_columns: columns differ in length");
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = cols[c][r];
    }
    return m;
}

CVector ComplexMatrix::column(std::size_t c) const {
    CVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
           << b.cols();
        throw InvalidArgument(os.str());
    }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& x : data_) x *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    const auto& k = kernels();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const cplx alpha = a(i, l);
            if (alpha == cplx{}) continue;
            k.axpy(alpha, b.row(l).data(), out.data(), out.size());
        }
    }
    return c;
}

CVector operator*(const ComplexMatrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) throw InvalidArgument("matrix-vector product: dimension mismatch");
    CVector y(a.rows());
    const auto& k = kernels();
    // sum_j A_ij x_j = conj(sum_j conj(A_ij) conj(x_j))
    CVector xc(x.begin(), x.end());
    for (auto& v : xc) v = std::conj(v);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = std::conj(k.dot_conj(a.row(i).data(), xc.data(), x.size()));
    return y;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& x : a.entries()) m = std::max(m, std::abs(x));
    return m;
}

double frobenius_norm(const ComplexMatrix& a) {
    return std::sqrt(kernels().norm_sq(a.entries().data(), a.entries().size()));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

double hermitian_asymmetry(const ComplexMatrix& a) {
    if (!a.square()) throw InvalidArgument("hermitian_asymmetry: matrix is not square");
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
    return m;
}

double unitarity_residual(const ComplexMatrix& u) {
    if (!u.square()) throw InvalidArgument("unitarity_residual: matrix is not square");
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

cplx sandwich(std::span<const cplx> u, const ComplexMatrix& a, std::span<const cplx> v) {
    const CVector av = a * v;
    return dot_conj(u, av);
}

HermitianEigen eig_hermitian(const ComplexMatrix& input) {
    if (!input.square()) throw InvalidArgument("eig_hermitian: matrix is not square");
    for (const auto& x : input.entries())
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw InvalidArgument("eig_hermitian: non-finite entry");
    const double asym = hermitian_asymmetry(input);
    if (asym > kHermitianTolerance) {
        std::ostringstream os;
        os << "eig_hermitian: input is not Hermitian (max |H - H^dagger| = " << asym << ")";
        throw InvalidArgument(os.str());
    }

    const std::size_t n = input.rows();
    ComplexMatrix h = input;
    for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();
    // Rows of vt are the eigenvectors (columns of V).
    ComplexMatrix vt = ComplexMatrix::identity(n);
    const auto& k = kernels();

    const double threshold = 1e-14 * frobenius_norm(input);
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c) s += std::norm(h(r, c));
        return std::sqrt(s);
    };

    bool converged = off_norm() <= threshold;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx hpq = h(p, q);
                const double mag = std::abs(hpq);
                if (mag == 0.0) continue;
                const double a = h(p, p).real();
                const double b = h(q, q).real();
                // Real rotation angle for the phase-reduced block [[a,|h|],[|h|,b]];
                // |theta| <= pi/4.
                const double theta =
                    (a - b) >= 0.0 ? 0.5 * std::atan2(-2.0 * mag, a - b) : 0.5 * std::atan2(2.0 * mag, b - a);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const cplx eip = hpq / mag;  // e^{i phi}
                const cplx emip = std::conj(eip);

                // W = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
                // Rows: A = W^dagger H.
                k.mix_pair(c, -s * eip, s, c * eip, h.row(p).data(), h.row(q).data(), n);
                // Columns of rows p, q: H'' = A W.
                for (std::size_t r : {p, q}) {
                    const cplx ap = h(r, p);
                    const cplx aq = h(r, q);
                    h(r, p) = c * ap - s * emip * aq;
                    h(r, q) = s * ap + c * emip * aq;
                }
                // Remaining column entries follow from Hermiticity.
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    h(r, p) = std::conj(h(p, r));
                    h(r, q) = std::conj(h(q, r));
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();
                // V <- V W, applied to the rows of V^T.
                k.mix_pair(c, -s * emip, s, c * emip, vt.row(p).data(), vt.row(q).data(), n);
            }
        }
        converged = off_norm() <= threshold;
    }
    if (!converged) {
        std::ostringstream os;
        os << "eig_hermitian: no convergence after " << kJacobiMaxSweeps << " sweeps (off-diagonal norm "
           << off_norm() << ")";
        throw NumericalFailure(os.str());
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return h(i, i).real() < h(j, j).real(); });
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t col = 0; col < n; ++col) {
        out.values[col] = h(order[col], order[col]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, col) = vt(order[col], r);
    }
    return out;
}

double unitary_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
    require_same_shape(u, v, "unitary_distance");
    if (!u.square()) throw InvalidArgument("unitary_distance: matrices must be square");
    const auto ue = u.entries();
    const auto ve = v.entries();
    auto dist = [&](double phi) {
        const cplx ph = std::polar(1.0, phi);
        double m = 0.0;
        for (std::size_t i = 0; i < ue.size(); ++i) m = std::max(m, std::abs(ue[i] - ph * ve[i]));
        return m;
    };
    auto refine = [&](double lo, double hi) {
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = dist(x1), f2 = dist(x2);
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = dist(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = dist(x2);
            }
        }
        return std::min(f1, f2);
    };

    constexpr int kGrid = 720;
    constexpr double kStep = 2.0 * std::numbers::pi / kGrid;
    double best_phi = 0.0;
    double best = dist(0.0);
    for (int i = 1; i < kGrid; ++i) {
        const double f = dist(i * kStep);
        if (f < best) {
            best = f;
            best_phi = i * kStep;
        }
    }
    best = std::min(best, refine(best_phi - kStep, best_phi + kStep));

    // Least-squares phase; exact when U = e^{i phi} V.
    const cplx overlap = kernels().dot_conj(ve.data(), ue.data(), ue.size());
    if (std::abs(overlap) > 0.0) {
        const double ls = std::arg(overlap);
        best = std::min({best, dist(ls), refine(ls - kStep, ls + kStep)});
    }
    return best;
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& a) {
    std::vector<CVector> cols;
    cols.reserve(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        CVector v = a.column(c);
        // Two passes of MGS keep orthogonality at rounding level.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : cols) axpy(-dot_conj(q, v), q, v);
        const double nrm = std::sqrt(norm_sq(v));
        if (nrm < 1e-12) throw InvalidArgument("orthonormalize_columns: columns are linearly dependent");
        for (auto& x : v) x /= nrm;
        cols.push_back(std::move(v));
    }
    return ComplexMatrix::from_columns(cols);
}

}  // namespace symqfi
