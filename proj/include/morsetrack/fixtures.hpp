#ifndef MORSETRACK_FIXTURES_HPP
#define MORSETRACK_FIXTURES_HPP

#include "morsetrack/cell_complex.hpp"

namespace morsetrack {

/// n vertices joined in a row by n-1 edges (n >= 2).  Vertex i is anchored
/// at (i, 0); vertices get ids 0..n-1, edge (i, i+1) follows.
CellComplex path_complex(int n);

/// n vertices on a cycle with n edges (n >= 3), anchored on the unit circle.
CellComplex circle_complex(int n);

/// w x h vertex lattice with every unit square split along the same diagonal
/// (lower-left to upper-right), giving 2*(w-1)*(h-1) triangles.  Vertices are
/// row-major, anchored at origin + (i*dx, j*dy).
CellComplex freudenthal_grid(int w, int h, double origin_x = 0.0,
                             double origin_y = 0.0, double dx = 1.0,
                             double dy = 1.0);

/// Minimal 7-vertex triangulation of the torus (14 triangles, 21 edges).
CellComplex torus_complex();

} // namespace morsetrack

#endif
