#include "morsetrack/lower_star.hpp"

#include <algorithm>
#include <queue>

#include "morsetrack/errors.hpp"

namespace morsetrack {

double cell_value(const CellComplex& K, const VertexField& vf, CellId c) {
    std::vector<CellId> verts = K.vertices_of(c);
    double best = vf.values[static_cast<std::size_t>(verts[0])];
    for (CellId v : verts)
        best = std::max(best, vf.values[static_cast<std::size_t>(v)]);
    return best;
}

std::vector<CellId> lex_max_vertices(const CellComplex& K,
                                     const VertexField& vf) {
    std::vector<CellId> maxv(K.size(), kNoCell);
    for (std::size_t i = 0; i < K.size(); ++i) {
        CellId c = static_cast<CellId>(i);
        if (K.dim(c) == 0) {
            maxv[i] = c;
            continue;
        }
        // Faces were added first, so their entries are already filled.
        CellId best = kNoCell;
        for (CellId f : K.faces(c)) {
            CellId m = maxv[static_cast<std::size_t>(f)];
            if (best == kNoCell || vf.less(best, m))
                best = m;
        }
        maxv[i] = best;
    }
    return maxv;
}

namespace {

// Descending list of vertex keys; lexicographic order on these keys orders
// the cells of one lower star (all of which share the top vertex).
using CellKey = std::vector<std::pair<double, CellId>>;

CellKey make_key(const CellComplex& K, const VertexField& vf, CellId c) {
    CellKey key;
    for (CellId v : K.vertices_of(c))
        key.emplace_back(vf.values[static_cast<std::size_t>(v)], v);
    std::sort(key.begin(), key.end(),
              [](const auto& a, const auto& b) { return b < a; });
    return key;
}

} // namespace

DiscreteVectorField lower_star_field(const CellComplex& K,
                                     const VertexField& vf) {
    const std::size_t nverts = K.count_of_dim(0);
    if (vf.values.size() < nverts)
        throw InputError("lower_star_field: missing vertex values");
    for (std::size_t v = 0; v < nverts; ++v)
        if (K.dim(static_cast<CellId>(v)) != 0)
            throw InputError("lower_star_field: vertices must occupy ids 0..nv-1");

    std::vector<CellId> maxv = lex_max_vertices(K, vf);

    // Bucket the cells of each lower star, vertex itself excluded.
    std::vector<std::vector<CellId>> star(nverts);
    for (std::size_t i = 0; i < K.size(); ++i)
        if (K.dim(static_cast<CellId>(i)) > 0)
            star[static_cast<std::size_t>(maxv[i])].push_back(static_cast<CellId>(i));

    DiscreteVectorField V(K.size());

    // Scratch, reused across stars.
    std::vector<CellKey> keys;
    std::vector<int> state; // 0 available, 1 paired, 2 critical
    std::vector<int> local_of(K.size(), -1);

    for (std::size_t v = 0; v < nverts; ++v) {
        const std::vector<CellId>& cells = star[v];
        if (cells.empty())
            continue; // strict local minimum: v stays critical

        keys.assign(cells.size(), {});
        state.assign(cells.size(), 0);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            keys[i] = make_key(K, vf, cells[i]);
            local_of[static_cast<std::size_t>(cells[i])] = static_cast<int>(i);
        }

        auto local = [&](CellId c) {
            return (static_cast<std::size_t>(c) < K.size()) ? local_of[static_cast<std::size_t>(c)] : -1;
        };
        auto key_less = [&](int a, int b) {
            return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)] ||
                   (keys[static_cast<std::size_t>(a)] == keys[static_cast<std::size_t>(b)] &&
                    cells[static_cast<std::size_t>(a)] < cells[static_cast<std::size_t>(b)]);
        };
        auto key_greater = [&](int a, int b) { return key_less(b, a); };
        // Min-heaps via greater-than comparison.
        std::priority_queue<int, std::vector<int>, decltype(key_greater)>
            pq_zero(key_greater), pq_one(key_greater);

        auto unpaired_faces = [&](int li) {
            int count = 0;
            int last = -1;
            for (CellId f : K.faces(cells[static_cast<std::size_t>(li)])) {
                int lf = local(f);
                if (lf >= 0 && state[static_cast<std::size_t>(lf)] == 0) {
                    ++count;
                    last = lf;
                }
            }
            return std::pair<int, int>(count, last);
        };
        auto push_cofaces_with_one_free = [&](int li) {
            for (CellId cf : K.cofaces(cells[static_cast<std::size_t>(li)])) {
                int lc = local(cf);
                if (lc >= 0 && state[static_cast<std::size_t>(lc)] == 0 &&
                    unpaired_faces(lc).first == 1)
                    pq_one.push(lc);
            }
        };

        // Seed: the vertex pairs with its minimal edge; the other star
        // edges wait in pq_zero.
        int delta = -1;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (K.dim(cells[i]) == 1 && (delta < 0 || key_less(static_cast<int>(i), delta)))
                delta = static_cast<int>(i);
        // A lower star always contains an edge if it is nonempty: every
        // cell's faces through the top vertex lie in the same star.
        V.pair(K, static_cast<CellId>(v), cells[static_cast<std::size_t>(delta)]);
        state[static_cast<std::size_t>(delta)] = 1;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (K.dim(cells[i]) == 1 && static_cast<int>(i) != delta)
                pq_zero.push(static_cast<int>(i));
        push_cofaces_with_one_free(delta);

        while (true) {
            while (!pq_one.empty()) {
                int a = pq_one.top();
                pq_one.pop();
                if (state[static_cast<std::size_t>(a)] != 0)
                    continue;
                auto [count, face] = unpaired_faces(a);
                if (count == 0) {
                    pq_zero.push(a);
                    continue;
                }
                if (count != 1)
                    continue; // stale entry
                V.pair(K, cells[static_cast<std::size_t>(face)],
                       cells[static_cast<std::size_t>(a)]);
                state[static_cast<std::size_t>(face)] = 1;
                state[static_cast<std::size_t>(a)] = 1;
                push_cofaces_with_one_free(face);
                push_cofaces_with_one_free(a);
            }
            int crit = -1;
            while (!pq_zero.empty()) {
                int g = pq_zero.top();
                pq_zero.pop();
                if (state[static_cast<std::size_t>(g)] == 0) {
                    crit = g;
                    break;
                }
            }
            if (crit < 0)
                break;
            state[static_cast<std::size_t>(crit)] = 2;
            push_cofaces_with_one_free(crit);
        }

        for (CellId c : cells)
            local_of[static_cast<std::size_t>(c)] = -1;
    }
    return V;
}

} // namespace morsetrack
