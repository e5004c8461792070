#ifndef MORSETRACK_CELL_COMPLEX_HPP
#define MORSETRACK_CELL_COMPLEX_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace morsetrack {

/// Dense integer handle of a cell within one complex.
using CellId = std::int32_t;
inline constexpr CellId kNoCell = -1;

/// Where a cell lives in a (space)time decomposition.  Plain per-slice
/// complexes use SliceSimplex with layer 0 throughout.
enum class CellKind : std::uint8_t {
    SliceSimplex, ///< cell of the slice M x {t_i}; layer = slice index
    ProductCell,  ///< sigma x [t_{i-1}, t_i]; layer = interval index i
    ConeCell,     ///< join v * sigma between slices; layer = interval index i
};

/// Optional geometric position.  Used only for distance queries in the
/// general extension and for rendering; never by combinatorial operations.
struct Anchor {
    double x = 0.0;
    double y = 0.0;
};

/// Regular cell complex with explicit codimension-1 incidence.
///
/// Cells are identified by dense ids in insertion order.  Every cell stores
/// its ordered list of codim-1 faces; the coface index is maintained as the
/// exact transpose.  Construction validates regularity: faces must exist,
/// have dimension dim-1, and be pairwise distinct.
///
/// Complexes are immutable once built; all const queries are safe to share
/// across threads.
class CellComplex {
public:
    CellId add_cell(int dim, std::span<const CellId> faces,
                    CellKind kind = CellKind::SliceSimplex, int layer = 0);
    CellId add_cell(int dim, std::initializer_list<CellId> faces,
                    CellKind kind = CellKind::SliceSimplex, int layer = 0);

    void set_anchor(CellId c, Anchor a);

    std::size_t size() const { return dims_.size(); }
    int max_dim() const { return max_dim_; }

    int dim(CellId c) const { return dims_[static_cast<std::size_t>(c)]; }
    CellKind kind(CellId c) const { return kinds_[static_cast<std::size_t>(c)]; }
    int layer(CellId c) const { return layers_[static_cast<std::size_t>(c)]; }

    const std::vector<CellId>& faces(CellId c) const {
        return faces_[static_cast<std::size_t>(c)];
    }
    const std::vector<CellId>& cofaces(CellId c) const {
        return cofaces_[static_cast<std::size_t>(c)];
    }
    std::optional<Anchor> anchor(CellId c) const;

    std::size_t count_of_dim(int p) const;
    std::vector<CellId> cells_of_dim(int p) const;

    /// Vertex ids of the closure of c, sorted ascending.
    std::vector<CellId> vertices_of(CellId c) const;

    /// True when both complexes have identical cells (dims, faces) in the
    /// same order.  Kinds, layers and anchors are ignored.
    bool same_structure(const CellComplex& other) const;

private:
    std::vector<int> dims_;
    std::vector<CellKind> kinds_;
    std::vector<int> layers_;
    std::vector<std::vector<CellId>> faces_;
    std::vector<std::vector<CellId>> cofaces_;
    std::vector<Anchor> anchors_;
    std::vector<bool> has_anchor_;
    int max_dim_ = -1;
};

/// Alternating sum over dimensions of the cell counts.
long long euler_characteristic(const CellComplex& K);

} // namespace morsetrack

#endif
