#ifndef MORSETRACK_HOMOLOGY_HPP
#define MORSETRACK_HOMOLOGY_HPP

#include <vector>

#include "morsetrack/cell_complex.hpp"

namespace morsetrack {

/// Ranks of mod-2 homology per dimension, computed by Gaussian elimination
/// of the boundary matrices.  Regularity makes the mod-2 boundary the plain
/// face list.  Intended as an oracle for Morse-inequality checks; fine for
/// desk-scale complexes.
std::vector<long long> betti_mod2(const CellComplex& K);

} // namespace morsetrack

#endif
