#pragma once

// Dense complex matrices and the Hermitian eigensolver.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "symqfi/kernels.hpp"

namespace symqfi {

using CVector = std::vector<cplx>;

/// Row-major dense complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> d);
    // Matrix whose columns are the given vectors.
    static ComplexMatrix from_columns(std::span<const CVector> cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    CVector column(std::size_t c) const;

    std::span<const cplx> entries() const { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
CVector operator*(const ComplexMatrix& a, std::span<const cplx> x);

double max_abs(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
// max |A - B| entrywise; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max |A - A^dagger|
double hermitian_asymmetry(const ComplexMatrix& a);
// max |U^dagger U - I|
double unitarity_residual(const ComplexMatrix& u);

// <u|A|v>
cplx sandwich(std::span<const cplx> u, const ComplexMatrix& a, std::span<const cplx> v);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic complex Jacobi. Rejects inputs with max|H - H^dagger| above
/// kHermitianTolerance and throws NumericalFailure if the off-diagonal
/// Frobenius norm is not below 1e-14 * ||H||_F after kJacobiMaxSweeps.
/// Eigenvalues within a degenerate cluster come back in unspecified order.
HermitianEigen eig_hermitian(const ComplexMatrix& h);

/// min over phi of max_ij |U_ij - e^{i phi} V_ij|.
double unitary_distance(const ComplexMatrix& u, const ComplexMatrix& v);

// Modified Gram-Schmidt on the columns; the input must have full column rank.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& a);

}  // namespace symqfi
