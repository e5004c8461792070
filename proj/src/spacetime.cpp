#include "morsetrack/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "morsetrack/errors.hpp"
#include "morsetrack/persistence.hpp"

namespace morsetrack {

bool SliceSequence::same_triangulation() const {
    for (std::size_t i = 1; i < complexes.size(); ++i) {
        if (complexes[i] == complexes[0])
            continue;
        if (!complexes[i]->same_structure(*complexes[0]))
            return false;
    }
    return true;
}

SliceSequence SliceSequence::reversed() const {
    SliceSequence out;
    out.complexes.assign(complexes.rbegin(), complexes.rend());
    out.fields.assign(fields.rbegin(), fields.rend());
    out.vertex_values.assign(vertex_values.rbegin(), vertex_values.rend());
    // Keep times increasing so the reversed sequence is itself valid.
    for (std::size_t i = 0; i < times.size(); ++i)
        out.times.push_back(-times[times.size() - 1 - i]);
    return out;
}

namespace {

void check_sequence(const SliceSequence& S, bool require_fields) {
    if (S.slice_count() == 0)
        throw InputError("slice sequence is empty");
    if (S.times.size() != S.slice_count())
        throw InputError("slice sequence: one time per slice required");
    for (std::size_t i = 1; i < S.times.size(); ++i)
        if (!(S.times[i - 1] < S.times[i]))
            throw InputError("slice sequence: times must be strictly increasing");
    if (!require_fields && S.fields.empty())
        return;
    if (S.fields.size() != S.slice_count())
        throw InputError("slice sequence: one field per slice required");
    for (std::size_t i = 0; i < S.slice_count(); ++i) {
        if (S.fields[i].cell_count() != S.complexes[i]->size())
            throw InputError("slice " + std::to_string(i) +
                             ": field size does not match its complex");
        if (!is_gradient(*S.complexes[i], S.fields[i]))
            throw PipelineError("slice " + std::to_string(i) +
                                ": field has a closed V-path");
    }
}

// Copies one slice complex into X.complex under the given slice index.
void append_one_slice(SpacetimeComplex& X, const CellComplex& M, int index) {
    std::vector<CellId>& to_global = X.slice_to_global.emplace_back();
    to_global.resize(M.size());
    for (std::size_t c = 0; c < M.size(); ++c) {
        std::vector<CellId> faces;
        for (CellId f : M.faces(static_cast<CellId>(c)))
            faces.push_back(to_global[static_cast<std::size_t>(f)]);
        CellId g = X.complex.add_cell(M.dim(static_cast<CellId>(c)), faces,
                                      CellKind::SliceSimplex, index);
        if (auto a = M.anchor(static_cast<CellId>(c)))
            X.complex.set_anchor(g, *a);
        to_global[c] = g;
        X.global_to_local.push_back(static_cast<CellId>(c));
    }
}

void append_slices(SpacetimeComplex& X, const SliceSequence& S) {
    for (std::size_t i = 0; i < S.slice_count(); ++i)
        append_one_slice(X, *S.complexes[i], static_cast<int>(i));
}

void copy_slice_fields(const SliceSequence& S, const SpacetimeComplex& X,
                       DiscreteVectorField& W) {
    for (std::size_t i = 0; i < S.slice_count(); ++i) {
        const auto& map = X.slice_to_global[i];
        const DiscreteVectorField& Vi = S.fields[i];
        for (std::size_t c = 0; c < map.size(); ++c) {
            CellId head = Vi.up(static_cast<CellId>(c));
            if (head != kNoCell)
                W.pair(X.complex, map[c], map[static_cast<std::size_t>(head)]);
        }
    }
}

} // namespace

SpacetimeComplex build_product_complex(const SliceSequence& S) {
    check_sequence(S, /*require_fields=*/false);
    if (!S.same_triangulation())
        throw InputError("build_product_complex: slice triangulations differ");

    SpacetimeComplex X;
    append_slices(X, S);
    X.product_of.resize(S.slice_count());

    const CellComplex& M = *S.complexes[0];
    for (std::size_t i = 1; i < S.slice_count(); ++i) {
        std::vector<CellId>& prod = X.product_of[i];
        prod.resize(M.size());
        // Ids are insertion-ordered, so faces of c precede c and their
        // product cells already exist.
        for (std::size_t c = 0; c < M.size(); ++c) {
            std::vector<CellId> faces;
            faces.push_back(X.slice_to_global[i - 1][c]);
            faces.push_back(X.slice_to_global[i][c]);
            for (CellId f : M.faces(static_cast<CellId>(c)))
                faces.push_back(prod[static_cast<std::size_t>(f)]);
            CellId g = X.complex.add_cell(M.dim(static_cast<CellId>(c)) + 1, faces,
                                          CellKind::ProductCell,
                                          static_cast<int>(i));
            prod[c] = g;
            X.global_to_local.push_back(kNoCell);
        }
    }
    return X;
}

ExtensionReport extend_same_triangulation(const SliceSequence& S) {
    ExtensionReport report;
    check_sequence(S, /*require_fields=*/true);
    report.spacetime = build_product_complex(S);
    const SpacetimeComplex& X = report.spacetime;

    DiscreteVectorField W(X.complex.size());
    copy_slice_fields(S, X, W);

    for (std::size_t i = 1; i < S.slice_count(); ++i) {
        const CellComplex& M = *S.complexes[i];
        const DiscreteVectorField& Vi = S.fields[i];
        for (std::size_t c = 0; c < M.size(); ++c) {
            CellId local = static_cast<CellId>(c);
            if (Vi.is_critical(local)) {
                // Critical cells sink backward into their prism.
                W.pair(X.complex, X.slice_to_global[i][c], X.product_of[i][c]);
            } else if (CellId head = Vi.up(local); head != kNoCell) {
                W.pair(X.complex, X.product_of[i][c],
                       X.product_of[i][static_cast<std::size_t>(head)]);
            }
        }
    }
    report.field = std::move(W);
    return report;
}

namespace {

struct CurveOrder {
    std::vector<CellId> cycle;   // vertex local ids in angular order
    std::vector<double> angles;  // matching angles in [0, 2pi)
};

void validate_closed_curve(const CellComplex& K, const std::string& what) {
    if (K.max_dim() != 1)
        throw InputError(what + ": not a curve (dimension != 1)");
    std::size_t nv = K.count_of_dim(0);
    if (nv < 3)
        throw InputError(what + ": closed curve needs at least 3 vertices");
    if (K.count_of_dim(1) != nv)
        throw InputError(what + ": closed curve needs as many edges as vertices");
    for (std::size_t c = 0; c < K.size(); ++c) {
        CellId id = static_cast<CellId>(c);
        if (K.dim(id) == 0) {
            if (K.cofaces(id).size() != 2)
                throw InputError(what + ": vertex " + std::to_string(id) +
                                 " does not have exactly 2 incident edges");
            if (!K.anchor(id))
                throw InputError(what + ": vertex " + std::to_string(id) +
                                 " has no anchor coordinates");
        }
    }
}

CurveOrder angular_order(const CellComplex& K) {
    double cx = 0, cy = 0;
    std::vector<CellId> verts = K.cells_of_dim(0);
    for (CellId v : verts) {
        Anchor a = *K.anchor(v);
        cx += a.x;
        cy += a.y;
    }
    cx /= static_cast<double>(verts.size());
    cy /= static_cast<double>(verts.size());

    CurveOrder order;
    std::vector<std::pair<double, CellId>> items;
    for (CellId v : verts) {
        Anchor a = *K.anchor(v);
        double ang = std::atan2(a.y - cy, a.x - cx);
        if (ang < 0)
            ang += 2 * std::numbers::pi;
        items.emplace_back(ang, v);
    }
    std::sort(items.begin(), items.end());
    for (auto& [ang, v] : items) {
        order.angles.push_back(ang);
        order.cycle.push_back(v);
    }

    // The zipper walks vertices by angle; the walk must follow the curve.
    std::map<std::pair<CellId, CellId>, CellId> edge_of;
    for (CellId e : K.cells_of_dim(1)) {
        CellId u = K.faces(e)[0], w = K.faces(e)[1];
        edge_of[{std::min(u, w), std::max(u, w)}] = e;
    }
    std::size_t n = order.cycle.size();
    for (std::size_t k = 0; k < n; ++k) {
        CellId u = order.cycle[k], w = order.cycle[(k + 1) % n];
        if (!edge_of.count({std::min(u, w), std::max(u, w)}))
            throw InputError("curve vertices are not in angular order around their centroid");
    }
    return order;
}

// Layer bookkeeping produced by the zipper merge.
struct ZipperLayer {
    // Per next-slice vertex: candidate cone edges as (cross edge, prev apex).
    std::vector<std::vector<std::pair<CellId, CellId>>> vertex_cones;
    // Per next-slice edge: the unique cone triangle over it.
    std::vector<CellId> edge_cone;
    // All layer cells in creation order.
    std::vector<CellId> cells;
};

ZipperLayer zip_layer(SpacetimeComplex& X, int interval,
                      const CellComplex& prev,
                      const std::vector<CellId>& prev_global,
                      const CellComplex& next,
                      const std::vector<CellId>& next_global) {
    validate_closed_curve(prev, "prism slice " + std::to_string(interval - 1));
    validate_closed_curve(next, "prism slice " + std::to_string(interval));

    CurveOrder A = angular_order(prev);
    CurveOrder B = angular_order(next);
    std::size_t na = A.cycle.size(), nb = B.cycle.size();

    auto edge_lookup = [](const CellComplex& K) {
        std::map<std::pair<CellId, CellId>, CellId> look;
        for (CellId e : K.cells_of_dim(1)) {
            CellId u = K.faces(e)[0], w = K.faces(e)[1];
            look[{std::min(u, w), std::max(u, w)}] = e;
        }
        return look;
    };
    auto edgesA = edge_lookup(prev);
    auto edgesB = edge_lookup(next);

    ZipperLayer layer;
    layer.vertex_cones.resize(next.count_of_dim(0));
    layer.edge_cone.assign(next.size(), kNoCell);

    std::map<std::pair<CellId, CellId>, CellId> cross; // (prev local, next local)
    auto cross_edge = [&](CellId a, CellId b) {
        auto it = cross.find({a, b});
        if (it != cross.end())
            return it->second;
        CellId g = X.complex.add_cell(1, {prev_global[static_cast<std::size_t>(a)],
                                          next_global[static_cast<std::size_t>(b)]},
                                      CellKind::ConeCell, interval);
        X.global_to_local.push_back(kNoCell);
        cross[{a, b}] = g;
        layer.cells.push_back(g);
        layer.vertex_cones[static_cast<std::size_t>(b)].emplace_back(g, a);
        return g;
    };

    // Unwrapped angles over one full loop on each side.
    auto angA = [&](std::size_t k) {
        return A.angles[k % na] + 2 * std::numbers::pi * static_cast<double>(k / na);
    };
    auto angB = [&](std::size_t k) {
        return B.angles[k % nb] + 2 * std::numbers::pi * static_cast<double>(k / nb);
    };

    std::size_t ka = 0, kb = 0;
    CellId a = A.cycle[0], b = B.cycle[0];
    cross_edge(a, b);
    while (ka < na || kb < nb) {
        bool advance_prev;
        if (ka == na)
            advance_prev = false;
        else if (kb == nb)
            advance_prev = true;
        else
            advance_prev = angA(ka + 1) <= angB(kb + 1);

        if (advance_prev) {
            CellId a2 = A.cycle[(ka + 1) % na];
            CellId base = edgesA.at({std::min(a, a2), std::max(a, a2)});
            CellId t = X.complex.add_cell(
                2,
                {prev_global[static_cast<std::size_t>(base)], cross_edge(a, b),
                 cross_edge(a2, b)},
                CellKind::ConeCell, interval);
            X.global_to_local.push_back(kNoCell);
            layer.cells.push_back(t);
            a = a2;
            ++ka;
        } else {
            CellId b2 = B.cycle[(kb + 1) % nb];
            CellId base = edgesB.at({std::min(b, b2), std::max(b, b2)});
            CellId t = X.complex.add_cell(
                2,
                {next_global[static_cast<std::size_t>(base)], cross_edge(a, b),
                 cross_edge(a, b2)},
                CellKind::ConeCell, interval);
            X.global_to_local.push_back(kNoCell);
            layer.cells.push_back(t);
            layer.edge_cone[static_cast<std::size_t>(base)] = t;
            b = b2;
            ++kb;
        }
    }
    return layer;
}

// Distance from every prev-slice vertex to the nearest critical p-cell of
// the prev field, under the configured metric.
std::vector<double> closest_critical_score(const CellComplex& prev,
                                           const DiscreteVectorField& Vprev,
                                           int p, ClosestMetric metric) {
    std::vector<CellId> crit;
    for (CellId c : prev.cells_of_dim(p))
        if (Vprev.is_critical(c))
            crit.push_back(c);

    std::size_t nv = prev.count_of_dim(0);
    std::vector<double> score(nv, std::numeric_limits<double>::infinity());
    if (crit.empty())
        return score;

    if (metric == ClosestMetric::Euclidean) {
        std::vector<Anchor> targets;
        for (CellId c : crit) {
            Anchor mid{0, 0};
            std::vector<CellId> verts = prev.vertices_of(c);
            for (CellId v : verts) {
                Anchor a = *prev.anchor(v);
                mid.x += a.x;
                mid.y += a.y;
            }
            mid.x /= static_cast<double>(verts.size());
            mid.y /= static_cast<double>(verts.size());
            targets.push_back(mid);
        }
        for (std::size_t v = 0; v < nv; ++v) {
            Anchor a = *prev.anchor(static_cast<CellId>(v));
            for (const Anchor& t : targets)
                score[v] = std::min(score[v], std::hypot(a.x - t.x, a.y - t.y));
        }
    } else {
        // Multi-source BFS over the 1-skeleton from critical-cell vertices.
        std::deque<CellId> queue;
        for (CellId c : crit)
            for (CellId v : prev.vertices_of(c))
                if (score[static_cast<std::size_t>(v)] != 0.0) {
                    score[static_cast<std::size_t>(v)] = 0.0;
                    queue.push_back(v);
                }
        while (!queue.empty()) {
            CellId v = queue.front();
            queue.pop_front();
            for (CellId e : prev.cofaces(v)) {
                if (prev.dim(e) != 1)
                    continue;
                CellId w = prev.faces(e)[0] == v ? prev.faces(e)[1] : prev.faces(e)[0];
                if (std::isinf(score[static_cast<std::size_t>(w)])) {
                    score[static_cast<std::size_t>(w)] =
                        score[static_cast<std::size_t>(v)] + 1.0;
                    queue.push_back(w);
                }
            }
        }
    }
    return score;
}

} // namespace

SpacetimeComplex build_prism_complex_1d(const CellComplex& prev,
                                        const CellComplex& next) {
    SpacetimeComplex X;
    append_one_slice(X, prev, 0);
    append_one_slice(X, next, 1);
    zip_layer(X, 1, prev, X.slice_to_global[0], next, X.slice_to_global[1]);
    return X;
}

DiscreteVectorField acyclic_completion(const CellComplex& K,
                                       DiscreteVectorField partial,
                                       const std::vector<CellId>& candidates,
                                       std::vector<CellId>* leftover) {
    std::vector<bool> eligible(K.size(), false);
    for (CellId c : candidates)
        eligible[static_cast<std::size_t>(c)] = true;

    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (CellId c : candidates) {
            if (!partial.is_critical(c))
                continue;
            CellId lone = kNoCell;
            int free = 0;
            for (CellId cf : K.cofaces(c)) {
                if (partial.is_critical(cf)) {
                    ++free;
                    lone = cf;
                }
            }
            if (free == 1 && eligible[static_cast<std::size_t>(lone)]) {
                partial.pair(K, c, lone);
                progressed = true;
            }
        }
    }
    if (leftover) {
        leftover->clear();
        for (CellId c : candidates)
            if (partial.is_critical(c))
                leftover->push_back(c);
    }
    return partial;
}

ExtensionReport extend_general(const SliceSequence& S, ClosestMetric metric,
                               std::uint64_t cap) {
    check_sequence(S, /*require_fields=*/true);
    const std::size_t r = S.slice_count() - 1;
    for (std::size_t i = 0; i <= r && r > 0; ++i)
        validate_closed_curve(*S.complexes[i], "slice " + std::to_string(i));

    ExtensionReport report;
    SpacetimeComplex& X = report.spacetime;
    append_slices(X, S);

    std::vector<ZipperLayer> layers(r + 1);
    for (std::size_t i = 1; i <= r; ++i)
        layers[i] = zip_layer(X, static_cast<int>(i), *S.complexes[i - 1],
                              X.slice_to_global[i - 1], *S.complexes[i],
                              X.slice_to_global[i]);

    DiscreteVectorField W(X.complex.size());
    copy_slice_fields(S, X, W);

    for (std::size_t i = 1; i <= r; ++i) {
        const CellComplex& prev = *S.complexes[i - 1];
        const CellComplex& next = *S.complexes[i];
        const DiscreteVectorField& Vnext = S.fields[i];
        ZipperLayer& layer = layers[i];

        for (int p = 0; p <= 1; ++p) {
            std::vector<double> score =
                closest_critical_score(prev, S.fields[i - 1], p, metric);
            for (CellId sigma : next.cells_of_dim(p)) {
                if (!Vnext.is_critical(sigma))
                    continue;
                CellId sigma_g = X.slice_to_global[i][static_cast<std::size_t>(sigma)];
                if (p == 1) {
                    CellId cone = layer.edge_cone[static_cast<std::size_t>(sigma)];
                    if (cone == kNoCell || !W.is_critical(cone))
                        throw PipelineError("extend_general: cone over critical edge unavailable");
                    W.pair(X.complex, sigma_g, cone);
                    continue;
                }
                // Candidate cross edges ordered by apex distance, then apex id.
                auto cones = layer.vertex_cones[static_cast<std::size_t>(sigma)];
                std::stable_sort(cones.begin(), cones.end(),
                                 [&](const auto& lhs, const auto& rhs) {
                                     double ds = score[static_cast<std::size_t>(lhs.second)];
                                     double dt = score[static_cast<std::size_t>(rhs.second)];
                                     return ds < dt || (ds == dt && lhs.second < rhs.second);
                                 });
                CellId chosen = kNoCell;
                for (auto& [edge, apex] : cones)
                    if (W.is_critical(edge)) {
                        chosen = edge;
                        break;
                    }
                if (chosen == kNoCell)
                    throw PipelineError("extend_general: unresolvable cone pairing conflict");
                W.pair(X.complex, sigma_g, chosen);
            }
        }

        // Fill the rest of the layer; whatever free-face collapse cannot
        // reach stays critical and is reported.
        std::vector<CellId> unmatched;
        for (CellId c : layer.cells)
            if (W.is_critical(c))
                unmatched.push_back(c);
        std::vector<CellId> leftover;
        W = acyclic_completion(X.complex, std::move(W), unmatched, &leftover);
        for (CellId c : leftover)
            report.extra_criticals.push_back(c);
    }

    // Cleanup: cancel extras against each other where a unique path exists.
    // Slice criticals are never touched, so the general and the product
    // route agree on identical inputs.
    auto by_dim_then_id = [&](CellId lhs, CellId rhs) {
        int dl = X.complex.dim(lhs), dr = X.complex.dim(rhs);
        return dl < dr || (dl == dr && lhs < rhs);
    };
    std::vector<CellId> extras = report.extra_criticals;
    std::sort(extras.begin(), extras.end(), by_dim_then_id);
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (CellId alpha : extras) {
            if (!W.is_critical(alpha))
                continue;
            for (CellId beta : extras) {
                if (X.complex.dim(beta) != X.complex.dim(alpha) + 1 ||
                    !W.is_critical(beta))
                    continue;
                if (gradient_paths_between(X.complex, W, beta, alpha, cap) == 1) {
                    W = cancel_pair(X.complex, std::move(W), alpha, beta, cap);
                    report.cancelled.emplace_back(alpha, beta);
                    progressed = true;
                    break;
                }
            }
            if (progressed)
                break;
        }
    }
    for (CellId c : report.extra_criticals)
        if (W.is_critical(c))
            report.surviving_extras.push_back(c);

    report.field = std::move(W);
    return report;
}

} // namespace morsetrack
