#ifndef MORSETRACK_LOWER_STAR_HPP
#define MORSETRACK_LOWER_STAR_HPP

#include <vector>

#include "morsetrack/cell_complex.hpp"
#include "morsetrack/vector_field.hpp"

namespace morsetrack {

/// Vertex-sampled scalar data on a complex.  Ties are broken by vertex id,
/// so the lexicographic pair (value, id) is always injective even on heavily
/// quantized image data.
struct VertexField {
    std::vector<double> values; // indexed by vertex cell id

    bool less(CellId u, CellId w) const {
        double a = values[static_cast<std::size_t>(u)];
        double b = values[static_cast<std::size_t>(w)];
        return a < b || (a == b && u < w);
    }
};

/// Value a vertex field induces on a cell: the maximum over its vertices,
/// with the full descending vertex key list as tie-break.  Monotone under
/// the face relation.
double cell_value(const CellComplex& K, const VertexField& vf, CellId c);

/// Lex-maximal vertex of each cell under (value, id) order.
std::vector<CellId> lex_max_vertices(const CellComplex& K,
                                     const VertexField& vf);

/// Builds a gradient vector field from vertex-sampled data.  Every pair
/// stays inside one lower star (the cells sharing a given lex-max vertex);
/// within a star, cells are matched in homology-collapse order so the
/// result never has a closed V-path.  A vertex ends up critical exactly
/// when it is a strict local minimum in the tie-broken order.
///
/// Requires a simplicial complex whose dim-0 cells occupy ids 0..nv-1.
DiscreteVectorField lower_star_field(const CellComplex& K,
                                     const VertexField& vf);

} // namespace morsetrack

#endif
