#pragma once

// Character-basis diagonalization of group-symmetric mixtures.
//
// Given states psi_g = U_g psi_e for an abelian group G represented by
// momentum permutations, the vectors
//     e_lambda = (1/sqrt|G|) sum_g chi_lambda(g) psi_g
// are mutually orthogonal eigenvectors of rho = (1/|G|) sum_g |psi_g><psi_g|
// with eigenvalues <e_lambda|e_lambda> / |G|.

#include <cstddef>
#include <vector>

#include "symqfi/constellation.hpp"
#include "symqfi/group.hpp"
#include "symqfi/quantum_state.hpp"

namespace symqfi {

inline constexpr double kNullWeight = 1e-12;

struct SymmetricEigenbasis {
    // Indexed by lambda in mixed-radix order (lambda = 0 is the trivial character).
    std::vector<PureState> vectors;       // normalized; all-zero when null[lambda]
    std::vector<PureState> unnormalized;  // e_lambda as defined above
    std::vector<double> weights;          // n_lambda / |G|, 0 when null
    std::vector<bool> null;               // n_lambda < kNullWeight

    std::size_t size() const { return weights.size(); }
};

/// states[g] must equal P_{sigma_g} states[0] within 1e-10, with sigma_g the
/// momentum permutation for element g; throws InvalidArgument naming the
/// first g that violates it, or when states.size() != |G|.
SymmetricEigenbasis symmetric_eigenbasis(const std::vector<PureState>& states, const AbelianGroupSpec& group,
                                         const PermutationTable& momentum_perms);

/// Validates the source and momentum symmetry of (c, psf), orders the source
/// states by group element (states[g] = state of the source g . r_0) and
/// returns symmetric_eigenbasis of them. Requires the group to act regularly
/// on the sources.
SymmetricEigenbasis character_eigenbasis(const Constellation& c, const DiscretePSF& psf);

/// Relabels the ensemble so that states[base] plays the identity role:
/// out[g] = states[g * base].
std::vector<PureState> rebase_states(const std::vector<PureState>& states, const AbelianGroupSpec& group,
                                     std::size_t base);

/// Multiplicity of every character in the momentum permutation representation
/// is exactly one.
bool verify_multiplicity_free(const AbelianGroupSpec& group, const PermutationTable& momentum_perms);

/// Per-character multiplicities (1/|G|) sum_g conj(chi_lambda(g)) fix(sigma_g).
std::vector<double> character_multiplicities(const AbelianGroupSpec& group, const PermutationTable& momentum_perms);

/// Columns b_lambda[j] = chi_lambda(g_j)/sqrt|G| where sigma_{g_j}(0) = j.
/// Requires the permutation action to be regular. These are the conjugated
/// rows of qft_matrix relabeled onto momentum indices.
ComplexMatrix character_basis(const AbelianGroupSpec& group, const PermutationTable& momentum_perms);

}  // namespace symqfi
