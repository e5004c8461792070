#ifndef MORSETRACK_MORSE_FUNCTION_HPP
#define MORSETRACK_MORSE_FUNCTION_HPP

#include <vector>

#include "morsetrack/cell_complex.hpp"
#include "morsetrack/vector_field.hpp"

namespace morsetrack {

/// Total map cell id -> value (one entry per cell of the complex).
using MorseValues = std::vector<double>;

/// One failed cardinality condition at a cell: more than one coface with a
/// value <= the cell's, or more than one face with a value >= it.
struct MorseViolation {
    enum class Kind { LowCofaces, HighFaces };
    CellId cell = kNoCell;
    Kind kind = Kind::LowCofaces;
    std::vector<CellId> offenders;
};

/// Checks both cardinality conditions of a discrete Morse function at every
/// cell.  An empty result means f is a discrete Morse function on K.
/// Violations are data, not errors.
std::vector<MorseViolation> validate_morse_function(const CellComplex& K,
                                                    const MorseValues& f);

/// The gradient field of a discrete Morse function: pairs every cell with
/// the (unique) coface of smaller-or-equal value.  Throws InputError when f
/// fails validation.
DiscreteVectorField field_from_function(const CellComplex& K,
                                        const MorseValues& f);

} // namespace morsetrack

#endif
