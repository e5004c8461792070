#include <doctest.h>

#include <map>
#include <memory>
#include <random>
#include <set>

#include "morsetrack/fixtures.hpp"
#include "morsetrack/spacetime.hpp"
#include "morsetrack/tracking.hpp"
#include "support.hpp"

using namespace morsetrack;
using namespace testsupport;

namespace {

SliceSequence sequence_of(std::shared_ptr<const CellComplex> K,
                          std::vector<std::vector<double>> values) {
    SliceSequence S;
    for (std::size_t i = 0; i < values.size(); ++i) {
        S.complexes.push_back(K);
        S.fields.push_back(lower_star_field(*K, VertexField{values[i]}));
        S.times.push_back(static_cast<double>(i));
        S.vertex_values.push_back(values[i]);
    }
    return S;
}

BifurcationDiagram diagram_of(const SliceSequence& S) {
    ExtensionReport fwd = extend_same_triangulation(S);
    ExtensionReport bwd = extend_same_triangulation(S.reversed());
    return build_diagram(S, fwd, bwd);
}

// Witness paths must be genuine V-paths through the extension and stay
// inside the two-slice window of their edge.
void check_witness(const SliceSequence& S, const ExtensionReport& ext,
                   const DiagramEdge& e, int slice) {
    const CellComplex& C = ext.spacetime.complex;
    const auto& w = e.witness;
    REQUIRE(w.size() % 2 == 1);
    for (std::size_t j = 0; j + 1 < w.size(); j += 2) {
        CHECK(ext.field.up(w[j]) == w[j + 1]);
        const auto& faces = C.faces(w[j + 1]);
        CHECK(std::find(faces.begin(), faces.end(), w[j]) != faces.end());
        CHECK(std::find(faces.begin(), faces.end(), w[j + 2]) != faces.end());
        if (j > 0)
            CHECK(w[j] != w[j - 2]);
    }
    for (CellId c : w) {
        if (C.kind(c) == CellKind::SliceSimplex) {
            CHECK(C.layer(c) >= slice - 1);
            CHECK(C.layer(c) <= slice);
        } else {
            CHECK(C.layer(c) == slice);
        }
    }
    (void)S;
}

// Independent re-derivation of trace_cell targets: enumerate all maximal
// V-paths in the extension starting at the source's prism cell with the
// plain recursive oracle, truncate each path at its first cell that has a
// critical slice-(i-1) face, and count distinct truncated paths per target.
std::map<CellId, std::size_t> oracle_edge_targets(const SliceSequence& S,
                                                  const ExtensionReport& ext,
                                                  int slice, CellId sigma_local) {
    const CellComplex& C = ext.spacetime.complex;
    const DiscreteVectorField& Vprev = S.fields[static_cast<std::size_t>(slice) - 1];
    CellId sg = ext.spacetime.slice_to_global[static_cast<std::size_t>(slice)]
                                             [static_cast<std::size_t>(sigma_local)];
    CellId T = ext.field.up(sg);
    REQUIRE(T != kNoCell);

    auto first_critical_face = [&](CellId beta) -> CellId {
        for (CellId f : C.faces(beta))
            if (C.kind(f) == CellKind::SliceSimplex && C.layer(f) == slice - 1 &&
                Vprev.is_critical(
                    ext.spacetime.global_to_local[static_cast<std::size_t>(f)]))
                return f;
        return kNoCell;
    };

    std::vector<std::vector<CellId>> paths;
    oracle_paths_from(C, ext.field, T, paths);

    std::set<std::vector<CellId>> truncated;
    std::map<CellId, std::size_t> counts;
    for (const auto& p : paths) {
        if (p.empty() || p[0] != sg)
            continue; // only paths that begin with the source cell
        for (std::size_t pos = 1; pos < p.size(); pos += 2) {
            CellId hit = first_critical_face(p[pos]);
            if (hit != kNoCell) {
                std::vector<CellId> prefix(p.begin(), p.begin() + static_cast<long>(pos) + 1);
                if (truncated.insert(prefix).second) {
                    CellId local =
                        ext.spacetime.global_to_local[static_cast<std::size_t>(hit)];
                    ++counts[local];
                }
                break;
            }
        }
    }
    return counts;
}

} // namespace

TEST_CASE("duplicated slices track every critical cell onto its own copy") {
    auto K = std::make_shared<CellComplex>(circle_complex(6));
    std::vector<double> vals{0, 5, 1, 4, 2, 3};
    SliceSequence S = sequence_of(K, {vals, vals, vals});
    ExtensionReport fwd = extend_same_triangulation(S);

    for (std::size_t i = 1; i < 3; ++i) {
        for (CellId c : critical_cells(*K, S.fields[i])) {
            if (K->dim(c) == 0) {
                DiagramEdge e = trace_vertex(S, fwd, static_cast<int>(i), c);
                CHECK(e.to == NodeRef{static_cast<int>(i) - 1, c});
                check_witness(S, fwd, e, static_cast<int>(i));
            } else {
                auto edges = trace_cell(S, fwd, static_cast<int>(i), c);
                REQUIRE(edges.size() == 1);
                CHECK(edges[0].to == NodeRef{static_cast<int>(i) - 1, c});
                CHECK(edges[0].multiplicity == 1);
                check_witness(S, fwd, edges[0], static_cast<int>(i));
            }
        }
    }

    BifurcationDiagram d = diagram_of(S);
    CHECK(d.forward.size() == d.strong.size());
    CHECK(d.births.empty());
    CHECK(d.deaths.empty());
    CHECK(d.shared_target_deaths.empty());
    CHECK(d.multi_target_deaths.empty());
}

TEST_CASE("trace_vertex descends to the previous slice's minimum") {
    // Slice 1 values (0,2,1,3): v0 critical.  Slice 0 values (2,1,0,3):
    // descending from v0 rolls to the minimum at v2.
    auto K = std::make_shared<CellComplex>(circle_complex(4));
    SliceSequence S = sequence_of(K, {{2, 1, 0, 3}, {0, 2, 1, 3}});
    REQUIRE(S.fields[1].is_critical(0));

    ExtensionReport fwd = extend_same_triangulation(S);
    DiagramEdge e = trace_vertex(S, fwd, 1, 0);
    CHECK(e.to == NodeRef{0, 2});
    check_witness(S, fwd, e, 1);

    // The descent oracle: follow arrows by hand in slice 0.
    CellId u = 0;
    const DiscreteVectorField& V0 = S.fields[0];
    while (V0.up(u) != kNoCell) {
        CellId edge = V0.up(u);
        u = K->faces(edge)[0] == u ? K->faces(edge)[1] : K->faces(edge)[0];
    }
    CHECK(u == 2);
}

TEST_CASE("vertex tracking is total: one forward edge per critical vertex") {
    std::mt19937 rng(2024);
    for (int round = 0; round < 20; ++round) {
        std::uniform_int_distribution<int> pick(0, 1), nverts(4, 9), side(3, 5),
            nslice(2, 4);
        auto K = std::make_shared<CellComplex>(pick(rng) == 0
                                                   ? circle_complex(nverts(rng))
                                                   : freudenthal_grid(side(rng), side(rng)));
        std::size_t nv = K->count_of_dim(0);
        std::vector<std::vector<double>> values;
        for (int i = 0, n = nslice(rng); i < n; ++i) {
            std::vector<double> vals(nv);
            for (std::size_t k = 0; k < nv; ++k)
                vals[k] = static_cast<double>(k);
            std::shuffle(vals.begin(), vals.end(), rng);
            values.push_back(std::move(vals));
        }
        SliceSequence S = sequence_of(K, values);
        ExtensionReport fwd = extend_same_triangulation(S);
        for (std::size_t i = 1; i < S.slice_count(); ++i)
            for (CellId c : critical_cells(*K, S.fields[i]))
                if (K->dim(c) == 0) {
                    DiagramEdge e = trace_vertex(S, fwd, static_cast<int>(i), c);
                    CHECK(e.to.slice == static_cast<int>(i) - 1);
                    CHECK(S.fields[i - 1].is_critical(e.to.cell));
                    CHECK(K->dim(e.to.cell) == 0);
                }
    }
}

TEST_CASE("two minima merging onto one: strong edge, birth, death pattern") {
    // Slice 0 has a single minimum (v2); slice 1 has minima v0 and v4.
    auto K = std::make_shared<CellComplex>(path_complex(5));
    SliceSequence S = sequence_of(K, {{2, 1, 0, 3, 4}, {0, 3, 4, 2, 1}});

    auto crit0 = critical_cells(*K, S.fields[0]);
    REQUIRE(crit0 == std::vector<CellId>{2});
    auto crit1 = as_set(critical_cells(*K, S.fields[1]));
    REQUIRE(crit1 == std::set<CellId>{0, 4, 6 /*edge v1-v2*/});

    ExtensionReport fwd = extend_same_triangulation(S);
    ExtensionReport bwd = extend_same_triangulation(S.reversed());

    DiagramEdge a = trace_vertex(S, fwd, 1, 0);
    DiagramEdge b = trace_vertex(S, fwd, 1, 4);
    CHECK(a.to == NodeRef{0, 2});
    CHECK(b.to == NodeRef{0, 2});

    BifurcationDiagram d = build_diagram(S, fwd, bwd);
    // Backward run connects the slice-0 minimum to exactly one of them.
    REQUIRE(d.strong.size() == 1);
    CHECK(d.strong[0].to == NodeRef{0, 2});
    NodeRef survivor = d.strong[0].from;
    NodeRef born = (survivor == NodeRef{1, 0}) ? NodeRef{1, 4} : NodeRef{1, 0};
    CHECK(std::find(d.births.begin(), d.births.end(), born) != d.births.end());

    // The shared-target configuration is recorded as a death pattern.
    REQUIRE(d.shared_target_deaths.size() == 1);
    CHECK(d.shared_target_deaths[0].target == NodeRef{0, 2});
    CHECK(d.shared_target_deaths[0].sources.size() == 2);

    // The slice-1 saddle has no connection at all: a birth.
    auto saddle_edges = trace_cell(S, fwd, 1, 6);
    CHECK(saddle_edges.empty());
    CHECK(std::find(d.births.begin(), d.births.end(), NodeRef{1, 6}) !=
          d.births.end());
}

TEST_CASE("engineered grid fixture: new saddle with no connection is a birth") {
    auto K = std::make_shared<CellComplex>(freudenthal_grid(4, 3));
    SliceSequence S = sequence_of(
        K, {{9, 10, 2, 5, 11, 4, 6, 3, 1, 8, 0, 7}, {8, 6, 2, 3, 11, 7, 0, 1, 9, 4, 5, 10}});
    const CellId source = 19; // critical edge of slice 1
    REQUIRE(K->dim(source) == 1);
    REQUIRE(S.fields[1].is_critical(source));

    ExtensionReport fwd = extend_same_triangulation(S);
    auto edges = trace_cell(S, fwd, 1, source);
    CHECK(edges.empty());
    CHECK(oracle_edge_targets(S, fwd, 1, source).empty());

    ExtensionReport bwd = extend_same_triangulation(S.reversed());
    BifurcationDiagram d = build_diagram(S, fwd, bwd);
    CHECK(std::find(d.births.begin(), d.births.end(), NodeRef{1, source}) !=
          d.births.end());
}

TEST_CASE("engineered grid fixture: two saddles share a target (death pattern)") {
    auto K = std::make_shared<CellComplex>(freudenthal_grid(4, 3));
    SliceSequence S = sequence_of(
        K, {{4, 0, 9, 7, 1, 6, 5, 10, 3, 2, 11, 8}, {6, 4, 9, 5, 3, 10, 8, 1, 11, 2, 7, 0}});
    const CellId src1 = 12, src2 = 19, target = 21;
    REQUIRE(S.fields[1].is_critical(src1));
    REQUIRE(S.fields[1].is_critical(src2));
    REQUIRE(S.fields[0].is_critical(target));

    ExtensionReport fwd = extend_same_triangulation(S);

    // The exhaustive V-path oracle confirms both paths reach the target.
    auto oracle1 = oracle_edge_targets(S, fwd, 1, src1);
    auto oracle2 = oracle_edge_targets(S, fwd, 1, src2);
    REQUIRE(oracle1.count(target) == 1);
    REQUIRE(oracle2.count(target) == 1);

    auto edges1 = trace_cell(S, fwd, 1, src1);
    auto edges2 = trace_cell(S, fwd, 1, src2);
    auto targets_of = [](const std::vector<DiagramEdge>& es) {
        std::map<CellId, std::size_t> m;
        for (const auto& e : es)
            m[e.to.cell] = e.multiplicity;
        return m;
    };
    CHECK(targets_of(edges1) == oracle1);
    CHECK(targets_of(edges2) == oracle2);
    for (const auto& e : edges1)
        check_witness(S, fwd, e, 1);

    ExtensionReport bwd = extend_same_triangulation(S.reversed());
    BifurcationDiagram d = build_diagram(S, fwd, bwd);
    bool recorded = false;
    for (const auto& ev : d.shared_target_deaths)
        if (ev.target == NodeRef{0, target})
            recorded = true;
    CHECK(recorded);
}

TEST_CASE("strong_connections filters by reversal and multiplicity") {
    DiagramEdge f1{{1, 10}, {0, 20}, 0, {}, 1, {}};
    DiagramEdge f2{{1, 11}, {0, 21}, 1, {}, 1, {}};
    DiagramEdge f3{{1, 12}, {0, 22}, 1, {}, 2, {}};
    DiagramEdge b1{{0, 20}, {1, 10}, 0, {}, 1, {}};
    DiagramEdge b2{{0, 21}, {1, 11}, 1, {}, 1, {}};
    DiagramEdge b3{{0, 22}, {1, 12}, 1, {}, 1, {}};

    auto strong = strong_connections({f1, f2, f3}, {b1, b2, b3});
    REQUIRE(strong.size() == 2);
    CHECK(strong[0].from == f1.from);
    CHECK(strong[1].from == f2.from);

    CHECK(strong_connections({f1}, {}).empty());
    CHECK(strong_connections({}, {b1}).empty());

    // Multiplicity 2 on the backward side also disqualifies a p >= 1 edge.
    DiagramEdge b2x = b2;
    b2x.multiplicity = 2;
    CHECK(strong_connections({f2}, {b2x}).empty());
}

TEST_CASE("strong edges form a partial matching per direction") {
    std::mt19937 rng(515);
    for (int round = 0; round < 10; ++round) {
        std::uniform_int_distribution<int> nverts(5, 9), nslice(2, 4);
        auto K = std::make_shared<CellComplex>(circle_complex(nverts(rng)));
        std::size_t nv = K->count_of_dim(0);
        std::vector<std::vector<double>> values;
        for (int i = 0, n = nslice(rng); i < n; ++i) {
            std::vector<double> vals(nv);
            for (std::size_t k = 0; k < nv; ++k)
                vals[k] = static_cast<double>(k);
            std::shuffle(vals.begin(), vals.end(), rng);
            values.push_back(std::move(vals));
        }
        SliceSequence S = sequence_of(K, values);
        BifurcationDiagram d = diagram_of(S);

        std::set<NodeRef> froms, tos;
        for (const DiagramEdge& e : d.strong) {
            CHECK(froms.insert(e.from).second);
            CHECK(tos.insert(e.to).second);
        }
    }
}

TEST_CASE("single slice diagram has nodes but no edges") {
    auto K = std::make_shared<CellComplex>(circle_complex(5));
    SliceSequence S = sequence_of(K, {{0, 1, 2, 3, 4}});
    BifurcationDiagram d = diagram_of(S);
    CHECK(!d.nodes.empty());
    CHECK(d.forward.empty());
    CHECK(d.backward.empty());
    CHECK(d.strong.empty());
    CHECK(d.births.empty());
    CHECK(d.deaths.empty());
}

TEST_CASE("diagrams are reproducible") {
    auto K = std::make_shared<CellComplex>(freudenthal_grid(4, 4));
    std::vector<double> a(16), b(16);
    std::mt19937 rng(8);
    for (int i = 0; i < 16; ++i) {
        a[static_cast<std::size_t>(i)] = i;
        b[static_cast<std::size_t>(i)] = i;
    }
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    SliceSequence S = sequence_of(K, {a, b});

    BifurcationDiagram d1 = diagram_of(S);
    BifurcationDiagram d2 = diagram_of(S);
    REQUIRE(d1.nodes.size() == d2.nodes.size());
    REQUIRE(d1.forward.size() == d2.forward.size());
    REQUIRE(d1.strong.size() == d2.strong.size());
    for (std::size_t i = 0; i < d1.forward.size(); ++i) {
        CHECK(d1.forward[i].from == d2.forward[i].from);
        CHECK(d1.forward[i].to == d2.forward[i].to);
        CHECK(d1.forward[i].witness == d2.forward[i].witness);
    }
    CHECK(d1.births == d2.births);
    CHECK(d1.deaths == d2.deaths);
}

TEST_CASE("tracking works across the general extension too") {
    std::vector<double> v6, v8;
    for (int k = 0; k < 6; ++k)
        v6.push_back(std::cos(2.0 * std::numbers::pi * k / 6));
    for (int k = 0; k < 8; ++k)
        v8.push_back(std::cos(2.0 * std::numbers::pi * k / 8));
    SliceSequence S;
    S.complexes = {std::make_shared<CellComplex>(circle_complex(6)),
                   std::make_shared<CellComplex>(circle_complex(8))};
    S.fields = {lower_star_field(*S.complexes[0], VertexField{v6}),
                lower_star_field(*S.complexes[1], VertexField{v8})};
    S.times = {0.0, 1.0};
    S.vertex_values = {v6, v8};

    ExtensionReport fwd = extend_general(S);
    ExtensionReport bwd = extend_general(S.reversed());
    BifurcationDiagram d = build_diagram(S, fwd, bwd);

    // One minimum and one maximum per slice: both connect strongly.
    REQUIRE(d.nodes.size() == 4);
    CHECK(d.forward.size() == 2);
    CHECK(d.strong.size() == 2);
    CHECK(d.births.empty());
    CHECK(d.deaths.empty());

    auto tracks = strong_tracks(d);
    REQUIRE(tracks.size() == 2);
    CHECK(tracks[0].size() == 2);
    CHECK(tracks[1].size() == 2);
}
