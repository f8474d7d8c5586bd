#pragma once

// Finite abelian groups as products of cyclic factors, their characters and
// the group Fourier transform.

#include <cstddef>
#include <vector>

#include "symqfi/linalg.hpp"

namespace symqfi {

/// Z_{N_0} x Z_{N_1} x ... with elements indexed in mixed radix, first
/// factor most significant: g = ((g_0 * N_1) + g_1) * N_2 + ...
class AbelianGroupSpec {
public:
    explicit AbelianGroupSpec(std::vector<int> factors);

    const std::vector<int>& factors() const { return factors_; }
    std::size_t order() const { return order_; }

    std::vector<int> digits(std::size_t g) const;
    std::size_t index(const std::vector<int>& digits) const;
    std::size_t multiply(std::size_t g, std::size_t h) const;
    std::size_t inverse(std::size_t g) const;

private:
    std::vector<int> factors_;
    std::size_t order_ = 1;
};

/// chi_lambda(g) in row lambda, column g.
using CharacterTable = ComplexMatrix;

/// chi_lambda(g) = prod_f exp(+2 pi i lambda_f g_f / N_f).
CharacterTable characters(const AbelianGroupSpec& spec);

/// [U]_{lambda,g} = chi_lambda(g^{-1}) / sqrt(|G|).
ComplexMatrix qft_matrix(const AbelianGroupSpec& spec);

}  // namespace symqfi
