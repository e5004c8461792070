#ifndef MORSETRACK_SPACETIME_HPP
#define MORSETRACK_SPACETIME_HPP

#include <memory>
#include <vector>

#include "morsetrack/cell_complex.hpp"
#include "morsetrack/vector_field.hpp"

namespace morsetrack {

/// Ordered slices t_0 < t_1 < ... < t_r, each carrying a complex and a
/// gradient field.  Slices may share one complex object (same-triangulation
/// sequences) or hold different triangulations (general sequences).
struct SliceSequence {
    std::vector<std::shared_ptr<const CellComplex>> complexes;
    std::vector<DiscreteVectorField> fields;
    std::vector<double> times;
    /// Optional vertex-sampled data per slice (indexed by vertex id); kept
    /// for value reporting and persistence simplification.
    std::vector<std::vector<double>> vertex_values;

    std::size_t slice_count() const { return complexes.size(); }
    /// All slice complexes structurally identical (eligible for the
    /// same-triangulation extension).
    bool same_triangulation() const;
    /// The sequence traversed in reversed time.
    SliceSequence reversed() const;
};

/// Cell decomposition of M x [0, 1]: per-slice copies of the input
/// complexes plus the connecting layer cells (products sigma x [t_{i-1},
/// t_i] or cones v * sigma).  Keeps the slice-local <-> global id maps.
struct SpacetimeComplex {
    CellComplex complex;
    /// slice_to_global[i][local id] -> global id
    std::vector<std::vector<CellId>> slice_to_global;
    /// global id -> local id within its slice; kNoCell for layer cells
    std::vector<CellId> global_to_local;
    /// product_of[i][local id] -> global id of (cell x interval i), only
    /// filled by the same-triangulation construction
    std::vector<std::vector<CellId>> product_of;

    std::size_t slice_count() const { return slice_to_global.size(); }
    bool is_slice_cell(CellId g) const {
        return complex.kind(g) == CellKind::SliceSimplex;
    }
};

/// Result of extending per-slice fields across the spacetime complex.
struct ExtensionReport {
    SpacetimeComplex spacetime;
    DiscreteVectorField field;
    /// Layer cells left critical by the extension, in creation order.
    std::vector<CellId> extra_criticals;
    /// Cleanup cancellations that removed extras, as (alpha, beta) pairs.
    std::vector<std::pair<CellId, CellId>> cancelled;
    /// Extras still critical after cleanup.
    std::vector<CellId> surviving_extras;
};

/// Distance used to pick the cone over a critical cell in the general
/// extension.  The anchors are the natural reading of "closest"; hop count
/// in the 1-skeleton is the combinatorial alternative.
enum class ClosestMetric { Euclidean, GraphDistance };

/// Regular cell decomposition of M x I for identical slice triangulations:
/// one product cell per slice cell and interval, with face set
/// {sigma x t_{i-1}, sigma x t_i} plus the products of sigma's faces.
SpacetimeComplex build_product_complex(const SliceSequence& S);

/// Same-triangulation extension: slice fields are kept, every critical cell
/// of slice i >= 1 is paired with its product cell, and products over
/// regular cells are matched among themselves.  Creates no new critical
/// cells; the critical set of the result is exactly V_0's, in slice 0.
ExtensionReport extend_same_triangulation(const SliceSequence& S);

/// Triangulated annulus between two closed anchored curves, built by the
/// angular zipper merge: walk both vertex cycles by angle, advancing on the
/// side with the smaller next angle.  Slices 0 (prev) and 1 (next) plus
/// cone cells in layer 1.
SpacetimeComplex build_prism_complex_1d(const CellComplex& prev,
                                        const CellComplex& next);

/// General extension for sequences of closed curves with varying
/// triangulations.  Critical p-cells of slice i are paired into cone cells
/// whose apex is closest to a critical p-cell of slice i-1; the rest of the
/// layer is completed by free-face collapse, leftover layer cells are
/// reported as extras, and extras are cancelled pairwise where a unique
/// connecting path exists.
ExtensionReport extend_general(const SliceSequence& S,
                               ClosestMetric metric = ClosestMetric::Euclidean,
                               std::uint64_t cap = kDefaultPathCap);

/// Extends `partial` over `candidates` by repeated free-face collapse: any
/// candidate cell with exactly one unmatched coface is paired with it, to a
/// fixpoint.  Unmatched candidates that remain are returned in `leftover`
/// (they stay critical).
DiscreteVectorField acyclic_completion(const CellComplex& K,
                                       DiscreteVectorField partial,
                                       const std::vector<CellId>& candidates,
                                       std::vector<CellId>* leftover = nullptr);

} // namespace morsetrack

#endif
