#ifndef MORSETRACK_PERSISTENCE_HPP
#define MORSETRACK_PERSISTENCE_HPP

#include <cstdint>

#include "morsetrack/cell_complex.hpp"
#include "morsetrack/lower_star.hpp"
#include "morsetrack/vector_field.hpp"

namespace morsetrack {

/// A cancellable pair of critical cells: alpha a p-cell, beta a (p+1)-cell,
/// joined by exactly one gradient path at cancellation time.
struct PersistencePair {
    CellId alpha = kNoCell;
    CellId beta = kNoCell;
    double persistence = 0.0; // value(beta) - value(alpha), >= 0
};

/// Number of distinct V-paths from the faces of beta that end at alpha.
/// Both cells must be critical with dim beta = dim alpha + 1.  Throws
/// CapExceeded when the count would exceed `cap`.
std::uint64_t gradient_paths_between(const CellComplex& K,
                                     const DiscreteVectorField& V, CellId beta,
                                     CellId alpha,
                                     std::uint64_t cap = kDefaultPathCap);

/// Forman cancellation: reverses the unique gradient path between beta and
/// alpha, removing both from the critical set.  Throws PipelineError when
/// the connecting path is not unique (zero or several paths would break
/// acyclicity or leave the reversal undefined).
DiscreteVectorField cancel_pair(const CellComplex& K, DiscreteVectorField V,
                                CellId alpha, CellId beta,
                                std::uint64_t cap = kDefaultPathCap);

/// Repeatedly cancels the currently least-persistence critical pair with
/// persistence < p and a unique connecting path, until none remains.
/// Persistence of a pair is the difference of induced cell values (max
/// vertex value).  Ties are broken by (dimension, alpha id, beta id) so the
/// result is deterministic.
DiscreteVectorField persistence_simplify(const CellComplex& K,
                                         DiscreteVectorField V,
                                         const VertexField& vf, double p,
                                         std::uint64_t cap = kDefaultPathCap);

} // namespace morsetrack

#endif
