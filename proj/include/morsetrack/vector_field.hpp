#ifndef MORSETRACK_VECTOR_FIELD_HPP
#define MORSETRACK_VECTOR_FIELD_HPP

#include <cstdint>
#include <vector>

#include "morsetrack/cell_complex.hpp"

namespace morsetrack {

inline constexpr std::uint64_t kDefaultPathCap = 1'000'000;

/// Partial matching pairing each p-cell with at most one (p+1)-coface.
/// Both lookup directions are kept; pairing validates incidence and the
/// at-most-one-pair rule.
class DiscreteVectorField {
public:
    DiscreteVectorField() = default;
    explicit DiscreteVectorField(std::size_t cell_count)
        : up_(cell_count, kNoCell), down_(cell_count, kNoCell) {}

    std::size_t cell_count() const { return up_.size(); }

    /// Pair tail with its coface head; throws on any matching violation.
    void pair(const CellComplex& K, CellId tail, CellId head);
    /// Remove the pair with the given tail (no-op if unpaired).
    void unpair(CellId tail);

    /// Coface this cell is paired into, or kNoCell.
    CellId up(CellId c) const { return up_[static_cast<std::size_t>(c)]; }
    /// Face paired into this cell, or kNoCell.
    CellId down(CellId c) const { return down_[static_cast<std::size_t>(c)]; }

    bool is_critical(CellId c) const {
        return up(c) == kNoCell && down(c) == kNoCell;
    }

    std::size_t pair_count() const;

    bool operator==(const DiscreteVectorField&) const = default;

private:
    std::vector<CellId> up_;
    std::vector<CellId> down_;
};

enum class CellClass { Critical, ArrowTail, ArrowHead };

CellClass classify(const DiscreteVectorField& V, CellId c);

/// All unmatched cells, ascending by id.
std::vector<CellId> critical_cells(const CellComplex& K,
                                   const DiscreteVectorField& V);

/// Critical cell counts per dimension.
std::vector<std::size_t> critical_counts(const CellComplex& K,
                                         const DiscreteVectorField& V);

/// True iff the Hasse digraph with matched edges reversed has no directed
/// cycle.  Checked independently per adjacent dimension pair (p, p+1),
/// which is where any V-path cycle must live.
bool is_gradient(const CellComplex& K, const DiscreteVectorField& V);

/// Follow vertex -> paired edge -> other endpoint until an unmatched vertex
/// is reached.  Requires a gradient field; a critical vertex returns itself.
CellId descend_vertex(const CellComplex& K, const DiscreteVectorField& V,
                      CellId v);

/// Alternating descending sequence a0, b0, a1, b1, ..., ak with V(ai) = bi
/// and a_{i+1} a face of b_i distinct from a_i.  Stored flat; cells at even
/// positions have dimension p, odd positions p+1.
struct VPath {
    std::vector<CellId> cells;
};

/// All maximal V-paths beginning at the faces of beta (a (p+1)-cell).
/// Branches at every matched face; finite on gradient fields.  Throws
/// CapExceeded when more than `cap` paths would be produced.
std::vector<VPath> vpaths_from(const CellComplex& K,
                               const DiscreteVectorField& V, CellId beta,
                               std::uint64_t cap = kDefaultPathCap);

} // namespace morsetrack

#endif
