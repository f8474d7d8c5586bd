#include "symqfi/symmetry.hpp"

#include <cmath>
#include <sstream>

#include "symqfi/errors.hpp"

namespace symqfi {

namespace {

void check_table(const AbelianGroupSpec& group, const PermutationTable& perms, std::size_t dim) {
    if (perms.size() != group.order()) throw InvalidArgument("permutation table size differs from |G|");
    for (const auto& p : perms)
        if (p.size() != dim) throw InvalidArgument("permutation length differs from the state dimension");
}

}  // namespace

SymmetricEigenbasis symmetric_eigenbasis(const std::vector<PureState>& states, const AbelianGroupSpec& group,
                                         const PermutationTable& momentum_perms) {
    const std::size_t order = group.order();
    if (states.size() != order) {
        std::ostringstream os;
        os << "symmetric_eigenbasis: " << states.size() << " states for a group of order " << order;
        throw InvalidArgument(os.str());
    }
    const std::size_t dim = states[0].dim();
    check_table(group, momentum_perms, dim);

    for (std::size_t g = 0; g < order; ++g) {
        if (states[g].dim() != dim) throw InvalidArgument("symmetric_eigenbasis: state dimensions differ");
        double dev = 0.0;
        for (std::size_t k = 0; k < dim; ++k)
            dev = std::max(dev, std::abs(states[g].amplitudes[momentum_perms[g][k]] - states[0].amplitudes[k]));
        if (dev > 1e-10) {
            std::ostringstream os;
            os << "symmetric_eigenbasis: state " << g << " is not U_g applied to the base state (deviation " << dev
               << ")";
            throw InvalidArgument(os.str());
        }
    }

    const CharacterTable chi = characters(group);
    const double scale = 1.0 / std::sqrt(static_cast<double>(order));
    SymmetricEigenbasis out;
    out.vectors.reserve(order);
    out.unnormalized.reserve(order);
    for (std::size_t lam = 0; lam < order; ++lam) {
        PureState e{CVector(dim)};
        for (std::size_t g = 0; g < order; ++g) axpy(chi(lam, g) * scale, states[g].amplitudes, e.amplitudes);
        const double n_lambda = norm_sq(e.amplitudes);
        const bool is_null = n_lambda < kNullWeight;
        PureState unit{CVector(dim)};
        if (!is_null) {
            const double inv = 1.0 / std::sqrt(n_lambda);
            for (std::size_t k = 0; k < dim; ++k) unit.amplitudes[k] = e.amplitudes[k] * inv;
        }
        out.vectors.push_back(std::move(unit));
        out.unnormalized.push_back(std::move(e));
        out.weights.push_back(is_null ? 0.0 : n_lambda / static_cast<double>(order));
        out.null.push_back(is_null);
    }
    return out;
}

SymmetricEigenbasis character_eigenbasis(const Constellation& c, const DiscretePSF& psf) {
    const auto src = validate_symmetry(c.symmetry, c.points);
    if (!src) throw InvalidArgument("character_eigenbasis: sources: " + src.message);
    const auto mom = validate_symmetry(c.symmetry, psf.momenta);
    if (!mom) throw InvalidArgument("character_eigenbasis: momenta: " + mom.message);
    const AbelianGroupSpec group = c.symmetry.group();
    if (c.points.size() != group.order())
        throw InvalidArgument("character_eigenbasis: the group must act regularly on the sources");
    std::vector<PureState> states;
    states.reserve(group.order());
    // psi_g is the state of g applied to source 0; this stays well defined
    // when sources coincide (zero separation).
    for (std::size_t g = 0; g < group.order(); ++g)
        states.push_back(source_state(psf, apply_group_element(c.symmetry, g, c.points[0])));
    return symmetric_eigenbasis(states, group, mom.permutations);
}

std::vector<PureState> rebase_states(const std::vector<PureState>& states, const AbelianGroupSpec& group,
                                     std::size_t base) {
    if (states.size() != group.order()) throw InvalidArgument("rebase_states: state count differs from |G|");
    std::vector<PureState> out;
    out.reserve(states.size());
    for (std::size_t g = 0; g < states.size(); ++g) out.push_back(states[group.multiply(g, base)]);
    return out;
}

std::vector<double> character_multiplicities(const AbelianGroupSpec& group, const PermutationTable& momentum_perms) {
    const std::size_t order = group.order();
    if (momentum_perms.size() != order) throw InvalidArgument("permutation table size differs from |G|");
    const CharacterTable chi = characters(group);
    std::vector<double> mult(order);
    for (std::size_t lam = 0; lam < order; ++lam) {
        cplx acc = 0.0;
        for (std::size_t g = 0; g < order; ++g) {
            std::size_t fixed = 0;
            for (std::size_t k = 0; k < momentum_perms[g].size(); ++k) fixed += momentum_perms[g][k] == k;
            acc += std::conj(chi(lam, g)) * static_cast<double>(fixed);
        }
        mult[lam] = acc.real() / static_cast<double>(order);
    }
    return mult;
}

bool verify_multiplicity_free(const AbelianGroupSpec& group, const PermutationTable& momentum_perms) {
    for (double m : character_multiplicities(group, momentum_perms))
        if (std::abs(m - 1.0) > 1e-9) return false;
    return true;
}

ComplexMatrix character_basis(const AbelianGroupSpec& group, const PermutationTable& momentum_perms) {
    const std::size_t order = group.order();
    if (momentum_perms.size() != order || momentum_perms[0].size() != order)
        throw InvalidArgument("character_basis: action must be regular (N = |G|)");
    std::vector<std::size_t> element_at(order, order);
    for (std::size_t g = 0; g < order; ++g) {
        const std::size_t j = momentum_perms[g][0];
        if (element_at[j] != order) throw InvalidArgument("character_basis: action is not free");
        element_at[j] = g;
    }
    const CharacterTable chi = characters(group);
    const double scale = 1.0 / std::sqrt(static_cast<double>(order));
    ComplexMatrix b(order, order);
    for (std::size_t lam = 0; lam < order; ++lam)
        for (std::size_t j = 0; j < order; ++j) b(j, lam) = chi(lam, element_at[j]) * scale;
    return b;
}

}  // namespace symqfi
