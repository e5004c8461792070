#ifndef MORSETRACK_TRACKING_HPP
#define MORSETRACK_TRACKING_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "morsetrack/spacetime.hpp"

namespace morsetrack {

/// A critical cell of one slice, identified by slice index and the cell's
/// local id in that slice's complex.
struct NodeRef {
    int slice = 0;
    CellId cell = kNoCell;
    auto operator<=>(const NodeRef&) const = default;
};

struct DiagramNode {
    NodeRef ref;
    int dim = 0;
    double value = 0.0;
    std::optional<Anchor> anchor;
};

/// Connection between critical cells of adjacent slices, witnessed by a
/// V-path through the extension (global cell ids of the spacetime complex).
struct DiagramEdge {
    NodeRef from;
    NodeRef to;
    int dim = 0;
    std::vector<CellId> witness;
    std::uint64_t multiplicity = 1; // distinct paths reaching this target
    /// Additional critical faces seen on the same witness cells beyond the
    /// first (tracing records the first target per path and notes the rest).
    std::vector<NodeRef> alternates;
};

/// Birth/death markers plus the raw connection structure between slices.
struct BifurcationDiagram {
    std::vector<DiagramNode> nodes;
    std::vector<DiagramEdge> forward;  // slice i -> slice i-1
    std::vector<DiagramEdge> backward; // slice k -> slice k+1 (reversed run)
    std::vector<DiagramEdge> strong;   // forward edges confirmed both ways

    /// Nodes with no strong connection into the previous / next slice:
    /// track starts and track ends.
    std::vector<NodeRef> births;
    std::vector<NodeRef> deaths;

    /// Several same-dimension sources joined to one target (death pattern).
    struct MergeEvent {
        NodeRef target;
        std::vector<NodeRef> sources;
    };
    /// One source joined to several targets (death pattern for p >= 1).
    struct MultiTargetEvent {
        NodeRef source;
        std::vector<NodeRef> targets;
    };
    std::vector<MergeEvent> shared_target_deaths;
    std::vector<MultiTargetEvent> multi_target_deaths;
};

/// Follows a critical vertex of slice i (i >= 1) through its prism pairing
/// and down the slice-(i-1) field to the unique critical vertex it reaches.
DiagramEdge trace_vertex(const SliceSequence& S, const ExtensionReport& ext,
                         int slice, CellId v_local);

/// Enumerates the V-paths out of a critical p-cell's prism pairing (p >= 1)
/// and emits one edge per distinct slice-(i-1) critical p-cell reached.  An
/// empty result marks a birth.
std::vector<DiagramEdge> trace_cell(const SliceSequence& S,
                                    const ExtensionReport& ext, int slice,
                                    CellId sigma_local,
                                    std::uint64_t cap = kDefaultPathCap);

/// Forward edges whose reversal appears among the backward edges; for
/// p >= 1 both witnesses must be single paths (multiplicity 1).
std::vector<DiagramEdge> strong_connections(const std::vector<DiagramEdge>& fwd,
                                            const std::vector<DiagramEdge>& bwd);

/// One node per critical cell of every slice field.
std::vector<DiagramNode> diagram_nodes(const SliceSequence& S);

/// Traces every critical cell of slices 1..r through the extension.
std::vector<DiagramEdge> trace_all(const SliceSequence& S,
                                   const ExtensionReport& ext,
                                   std::uint64_t cap = kDefaultPathCap);

/// Full diagram from a forward extension and the extension of the reversed
/// sequence.  All tie-breaks are deterministic; identical inputs produce
/// identical diagrams.
BifurcationDiagram build_diagram(const SliceSequence& S,
                                 const ExtensionReport& ext_fwd,
                                 const ExtensionReport& ext_bwd,
                                 std::uint64_t cap = kDefaultPathCap);

/// Maximal chains of strong edges, each listed first-slice first.  Ordered
/// by (dimension, first slice, first cell id).
std::vector<std::vector<NodeRef>> strong_tracks(const BifurcationDiagram& d);

} // namespace morsetrack

#endif
