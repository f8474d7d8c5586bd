#pragma once

// Beamsplitter / phaseshifter netlists.
//
// Beamsplitter on modes (i, j), i < j, acts on that pair with the block
//     [[ cos a,             e^{i phi} sin a ],
//      [ -e^{-i phi} sin a, cos a           ]]
// (a = mixing angle, phi = relative phase; a = pi/4 is 50:50). A
// phaseshifter multiplies one mode by e^{i phase}. Elements apply in list
// order, so netlist_unitary = E_k ... E_2 E_1.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "symqfi/linalg.hpp"

namespace symqfi {

struct Beamsplitter {
    std::size_t i = 0;
    std::size_t j = 1;
    double angle = 0.0;
    double phase = 0.0;
};

struct Phaseshifter {
    std::size_t mode = 0;
    double phase = 0.0;
};

using CircuitElement = std::variant<Beamsplitter, Phaseshifter>;

struct InterferometerNetlist {
    std::size_t modes = 0;
    std::vector<CircuitElement> elements;

    std::size_t beamsplitter_count() const;
    std::size_t phaseshifter_count() const;
};

inline constexpr double kNullRotation = 1e-12;

ComplexMatrix beamsplitter_block(double angle, double phase);

/// Throws InvalidArgument on a bad mode index.
ComplexMatrix netlist_unitary(const InterferometerNetlist& net);

/// Triangular Reck mesh: at most N(N-1)/2 beamsplitters followed by at most N
/// output phaseshifters. Rotations and phases below kNullRotation are pruned.
/// Throws InvalidArgument if max|U^dagger U - I| > 1e-10.
InterferometerNetlist reck_decompose(const ComplexMatrix& u);

enum class PresetKind { pair, rect, ring };

struct PresetCase {
    PresetKind kind = PresetKind::pair;
    int n = 2;  // ring size
};

/// pair: one 50:50 beamsplitter; rect: two layers of two beamsplitters
/// (Walsh mesh); ring(N): input phases w^g then a radix-2 mesh when N is a
/// power of two, otherwise the Reck mesh of the group transform. The
/// realized unitary matches qft_matrix of the case's group up to global
/// phase and an output relabeling (see output_relabeling).
InterferometerNetlist preset_circuit(const PresetCase& c);

/// Target transform of a preset (qft_matrix of Z_2, Z_2 x Z_2 or Z_N).
ComplexMatrix preset_target(const PresetCase& c);

struct Relabeling {
    std::vector<std::size_t> target_row;  // output mode k realizes target row target_row[k]
    double distance = 0.0;                // unitary_distance after relabeling
};

/// Output permutation matching the rows of u to those of target (rows that
/// agree up to phase), and the remaining unitary_distance. Throws
/// InvalidArgument if no row correspondence exists.
Relabeling output_relabeling(const ComplexMatrix& u, const ComplexMatrix& target);

/// Lines "BS i j angle phase" and "PS i phase", angles with 17 significant digits.
std::string netlist_to_text(const InterferometerNetlist& net);
/// Parses the text format; blank lines and '#' comments are ignored. The
/// mode count is `modes` if nonzero, else one more than the largest index.
InterferometerNetlist netlist_from_text(const std::string& text, std::size_t modes = 0);

}  // namespace symqfi
