#include "morsetrack/tracking.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "morsetrack/errors.hpp"
#include "morsetrack/lower_star.hpp"

namespace morsetrack {

namespace {

CellId other_vertex(const CellComplex& K, CellId edge, CellId v) {
    const auto& f = K.faces(edge);
    return f[0] == v ? f[1] : f[0];
}

} // namespace

DiagramEdge trace_vertex(const SliceSequence& S, const ExtensionReport& ext,
                         int slice, CellId v_local) {
    if (slice < 1)
        throw InputError("trace_vertex: need a slice index >= 1");
    const SpacetimeComplex& X = ext.spacetime;
    const CellComplex& C = X.complex;

    CellId vg = X.slice_to_global[static_cast<std::size_t>(slice)]
                                 [static_cast<std::size_t>(v_local)];
    CellId e = ext.field.up(vg);
    if (e == kNoCell || C.kind(e) == CellKind::SliceSimplex)
        throw PipelineError("trace_vertex: vertex is not paired into its prism");

    DiagramEdge edge;
    edge.from = {slice, v_local};
    edge.dim = 0;
    edge.witness = {vg, e};

    CellId ug = other_vertex(C, e, vg);
    edge.witness.push_back(ug);

    // Descend in the previous slice under its own field; the spacetime field
    // agrees there except at criticals, which is exactly where we stop.
    const CellComplex& prev = *S.complexes[static_cast<std::size_t>(slice) - 1];
    const DiscreteVectorField& Vprev = S.fields[static_cast<std::size_t>(slice) - 1];
    const auto& prev_map = X.slice_to_global[static_cast<std::size_t>(slice) - 1];

    CellId u = X.global_to_local[static_cast<std::size_t>(ug)];
    while (Vprev.up(u) != kNoCell) {
        CellId pe = Vprev.up(u);
        u = other_vertex(prev, pe, u);
        edge.witness.push_back(prev_map[static_cast<std::size_t>(pe)]);
        edge.witness.push_back(prev_map[static_cast<std::size_t>(u)]);
    }
    edge.to = {slice - 1, u};
    return edge;
}

std::vector<DiagramEdge> trace_cell(const SliceSequence& S,
                                    const ExtensionReport& ext, int slice,
                                    CellId sigma_local, std::uint64_t cap) {
    if (slice < 1)
        throw InputError("trace_cell: need a slice index >= 1");
    const SpacetimeComplex& X = ext.spacetime;
    const CellComplex& C = X.complex;
    const DiscreteVectorField& W = ext.field;
    const DiscreteVectorField& Vprev = S.fields[static_cast<std::size_t>(slice) - 1];

    CellId sg = X.slice_to_global[static_cast<std::size_t>(slice)]
                                 [static_cast<std::size_t>(sigma_local)];
    const int p = C.dim(sg);
    if (p < 1)
        throw InputError("trace_cell: use trace_vertex for vertices");
    CellId start = W.up(sg);
    if (start == kNoCell || C.kind(start) == CellKind::SliceSimplex)
        throw PipelineError("trace_cell: cell is not paired into its prism");

    // First slice-(i-1) critical face of a (p+1)-cell, if any; the rest are
    // noted as alternates on the emitted edge.
    auto critical_faces = [&](CellId beta) {
        std::vector<CellId> hits;
        for (CellId f : C.faces(beta)) {
            if (C.kind(f) == CellKind::SliceSimplex && C.layer(f) == slice - 1 &&
                Vprev.is_critical(X.global_to_local[static_cast<std::size_t>(f)]))
                hits.push_back(f);
        }
        return hits;
    };

    std::map<CellId, DiagramEdge> found;    // target local id -> edge
    std::vector<CellId> prefix = {sg};
    std::uint64_t paths_seen = 0;

    auto record = [&](const std::vector<CellId>& hits) {
        CellId first = hits[0];
        CellId local = X.global_to_local[static_cast<std::size_t>(first)];
        auto [it, fresh] = found.try_emplace(local);
        DiagramEdge& e = it->second;
        if (fresh) {
            e.from = {slice, sigma_local};
            e.to = {slice - 1, local};
            e.dim = p;
            e.witness = prefix;
            e.witness.push_back(first);
            e.multiplicity = 1;
        } else {
            e.multiplicity = std::min(e.multiplicity + 1, cap + 1);
        }
        for (std::size_t k = 1; k < hits.size(); ++k) {
            NodeRef alt{slice - 1,
                        X.global_to_local[static_cast<std::size_t>(hits[k])]};
            if (std::find(e.alternates.begin(), e.alternates.end(), alt) ==
                e.alternates.end())
                e.alternates.push_back(alt);
        }
    };

    // Depth-first over the V-path tree out of the prism cell.  A path is
    // truncated at the first (p+1)-cell carrying a critical face.
    auto expand = [&](auto&& self, CellId beta, CellId tail) -> void {
        prefix.push_back(beta);
        std::vector<CellId> hits = critical_faces(beta);
        if (!hits.empty()) {
            record(hits);
            if (++paths_seen > cap)
                throw CapExceeded("trace_cell: path count cap exceeded");
        } else {
            bool dead_end = true;
            for (CellId f : C.faces(beta)) {
                if (f == tail)
                    continue;
                CellId next = W.up(f);
                if (next != kNoCell) {
                    dead_end = false;
                    prefix.push_back(f);
                    self(self, next, f);
                    prefix.pop_back();
                }
            }
            if (dead_end && ++paths_seen > cap)
                throw CapExceeded("trace_cell: path count cap exceeded");
        }
        prefix.pop_back();
    };
    expand(expand, start, sg);

    std::vector<DiagramEdge> out;
    for (auto& [local, e] : found)
        out.push_back(std::move(e));
    return out;
}

std::vector<DiagramEdge> strong_connections(const std::vector<DiagramEdge>& fwd,
                                            const std::vector<DiagramEdge>& bwd) {
    std::map<std::pair<NodeRef, NodeRef>, std::uint64_t> reverse;
    for (const DiagramEdge& e : bwd) {
        auto [it, fresh] = reverse.try_emplace({e.from, e.to}, e.multiplicity);
        if (!fresh)
            it->second += e.multiplicity;
    }
    std::vector<DiagramEdge> strong;
    for (const DiagramEdge& e : fwd) {
        auto it = reverse.find({e.to, e.from});
        if (it == reverse.end())
            continue;
        if (e.dim >= 1 && (e.multiplicity != 1 || it->second != 1))
            continue; // higher cells need a single path in each direction
        strong.push_back(e);
    }
    return strong;
}

std::vector<DiagramNode> diagram_nodes(const SliceSequence& S) {
    std::vector<DiagramNode> nodes;
    for (std::size_t i = 0; i < S.slice_count(); ++i) {
        const CellComplex& M = *S.complexes[i];
        for (CellId c : critical_cells(M, S.fields[i])) {
            DiagramNode node;
            node.ref = {static_cast<int>(i), c};
            node.dim = M.dim(c);
            if (i < S.vertex_values.size() && !S.vertex_values[i].empty())
                node.value = cell_value(M, VertexField{S.vertex_values[i]}, c);
            std::vector<CellId> verts = M.vertices_of(c);
            Anchor mid{0, 0};
            bool have = !verts.empty();
            for (CellId v : verts) {
                auto a = M.anchor(v);
                if (!a) {
                    have = false;
                    break;
                }
                mid.x += a->x;
                mid.y += a->y;
            }
            if (have) {
                mid.x /= static_cast<double>(verts.size());
                mid.y /= static_cast<double>(verts.size());
                node.anchor = mid;
            }
            nodes.push_back(std::move(node));
        }
    }
    return nodes;
}

std::vector<DiagramEdge> trace_all(const SliceSequence& S,
                                   const ExtensionReport& ext,
                                   std::uint64_t cap) {
    std::vector<DiagramEdge> out;
    for (std::size_t i = 1; i < S.slice_count(); ++i) {
        const CellComplex& M = *S.complexes[i];
        for (CellId c : critical_cells(M, S.fields[i])) {
            if (M.dim(c) == 0)
                out.push_back(trace_vertex(S, ext, static_cast<int>(i), c));
            else {
                auto edges = trace_cell(S, ext, static_cast<int>(i), c, cap);
                out.insert(out.end(), edges.begin(), edges.end());
            }
        }
    }
    return out;
}

BifurcationDiagram build_diagram(const SliceSequence& S,
                                 const ExtensionReport& ext_fwd,
                                 const ExtensionReport& ext_bwd,
                                 std::uint64_t cap) {
    const std::size_t n = S.slice_count();
    if (ext_fwd.spacetime.slice_count() != n || ext_bwd.spacetime.slice_count() != n)
        throw InputError("build_diagram: extensions do not match the sequence");
    const int last = static_cast<int>(n) - 1;

    BifurcationDiagram d;
    d.nodes = diagram_nodes(S);
    d.forward = trace_all(S, ext_fwd, cap);

    SliceSequence R = S.reversed();
    auto to_orig = [&](const NodeRef& ref) {
        return NodeRef{last - ref.slice, ref.cell};
    };
    for (DiagramEdge& e : trace_all(R, ext_bwd, cap)) {
        e.from = to_orig(e.from);
        e.to = to_orig(e.to);
        for (NodeRef& alt : e.alternates)
            alt = to_orig(alt);
        d.backward.push_back(std::move(e));
    }

    d.strong = strong_connections(d.forward, d.backward);

    // Track endpoints: no strong link to the previous slice marks a birth,
    // none to the next slice marks a death.
    std::set<NodeRef> strong_prev, strong_next;
    for (const DiagramEdge& e : d.strong) {
        strong_prev.insert(e.from);
        strong_next.insert(e.to);
    }
    for (const DiagramNode& node : d.nodes) {
        if (node.ref.slice >= 1 && !strong_prev.count(node.ref))
            d.births.push_back(node.ref);
        if (node.ref.slice < last && !strong_next.count(node.ref))
            d.deaths.push_back(node.ref);
    }

    // Death patterns: several sources joined to one target, and one source
    // joined to several targets (p >= 1).
    std::map<NodeRef, std::vector<NodeRef>> by_target;
    std::map<NodeRef, std::set<NodeRef>> by_source;
    for (const DiagramEdge& e : d.forward) {
        by_target[e.to].push_back(e.from);
        if (e.dim >= 1)
            by_source[e.from].insert(e.to);
    }
    for (auto& [target, sources] : by_target)
        if (sources.size() >= 2)
            d.shared_target_deaths.push_back({target, sources});
    for (auto& [source, targets] : by_source)
        if (targets.size() >= 2)
            d.multi_target_deaths.push_back(
                {source, std::vector<NodeRef>(targets.begin(), targets.end())});

    return d;
}

std::vector<std::vector<NodeRef>> strong_tracks(const BifurcationDiagram& d) {
    // Strong edges go from slice i to slice i-1; a track is followed in
    // increasing slice order.
    std::map<NodeRef, NodeRef> next_of; // node -> strong partner one slice later
    std::set<NodeRef> has_prev;         // nodes continued from one slice earlier
    for (const DiagramEdge& e : d.strong) {
        next_of.emplace(e.to, e.from);
        has_prev.insert(e.from);
    }
    std::map<NodeRef, int> dim_of;
    for (const DiagramNode& nd : d.nodes)
        dim_of[nd.ref] = nd.dim;

    std::vector<std::vector<NodeRef>> tracks;
    for (const DiagramNode& nd : d.nodes) {
        if (has_prev.count(nd.ref))
            continue; // not a track head
        std::vector<NodeRef> track{nd.ref};
        auto it = next_of.find(nd.ref);
        while (it != next_of.end()) {
            track.push_back(it->second);
            it = next_of.find(it->second);
        }
        tracks.push_back(std::move(track));
    }
    std::sort(tracks.begin(), tracks.end(), [&](const auto& a, const auto& b) {
        int da = dim_of[a.front()], db = dim_of[b.front()];
        return std::tie(da, a.front()) < std::tie(db, b.front());
    });
    return tracks;
}

} // namespace morsetrack
