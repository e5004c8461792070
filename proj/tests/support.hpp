#ifndef MORSETRACK_TESTS_SUPPORT_HPP
#define MORSETRACK_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "morsetrack/cell_complex.hpp"
#include "morsetrack/fixtures.hpp"
#include "morsetrack/lower_star.hpp"
#include "morsetrack/vector_field.hpp"

// Independent oracles used to freeze expected values.  Everything here is
// written against the definitions directly and stays clear of the library's
// algorithmic code paths (except for plain data types).

namespace testsupport {

using namespace morsetrack;

// Arrow set derived by scanning every incidence pair against the two
// cardinality conditions: alpha -> beta iff beta is a coface with
// f(beta) <= f(alpha).  Returns pairs (tail, head), sorted.
inline std::vector<std::pair<CellId, CellId>>
scan_arrows(const CellComplex& K, const std::vector<double>& f) {
    std::vector<std::pair<CellId, CellId>> arrows;
    for (std::size_t i = 0; i < K.size(); ++i) {
        CellId a = static_cast<CellId>(i);
        for (CellId b : K.cofaces(a))
            if (f[static_cast<std::size_t>(b)] <= f[i])
                arrows.emplace_back(a, b);
    }
    std::sort(arrows.begin(), arrows.end());
    return arrows;
}

// True when f satisfies both conditions of a discrete Morse function at
// every cell (direct definition scan).
inline bool scan_is_morse(const CellComplex& K, const std::vector<double>& f) {
    for (std::size_t i = 0; i < K.size(); ++i) {
        CellId c = static_cast<CellId>(i);
        int low = 0, high = 0;
        for (CellId b : K.cofaces(c))
            if (f[static_cast<std::size_t>(b)] <= f[i])
                ++low;
        for (CellId g : K.faces(c))
            if (f[static_cast<std::size_t>(g)] >= f[i])
                ++high;
        if (low > 1 || high > 1)
            return false;
    }
    return true;
}

// Plain recursive enumeration of all maximal V-paths from the faces of
// beta; no memoization, no caps.  Paths are alternating cell sequences.
inline void oracle_paths_from(const CellComplex& K, const DiscreteVectorField& V,
                              CellId beta, std::vector<std::vector<CellId>>& out) {
    std::vector<CellId> prefix;
    auto walk = [&](auto&& self, CellId a) -> void {
        prefix.push_back(a);
        CellId up = V.up(a);
        if (up == kNoCell) {
            out.push_back(prefix);
        } else {
            prefix.push_back(up);
            for (CellId f : K.faces(up))
                if (f != a)
                    self(self, f);
            prefix.pop_back();
        }
        prefix.pop_back();
    };
    for (CellId f : K.faces(beta))
        walk(walk, f);
}

// Number of the above paths that end at `alpha`.
inline std::size_t oracle_path_count(const CellComplex& K,
                                     const DiscreteVectorField& V, CellId beta,
                                     CellId alpha) {
    std::vector<std::vector<CellId>> paths;
    oracle_paths_from(K, V, beta, paths);
    std::size_t n = 0;
    for (const auto& p : paths)
        if (p.back() == alpha)
            ++n;
    return n;
}

// Strict local minima in (value, id) order: the critical-vertex oracle for
// lower-star fields.
inline std::set<CellId> strict_local_minima(const CellComplex& K,
                                            const VertexField& vf) {
    std::set<CellId> minima;
    for (CellId v : K.cells_of_dim(0)) {
        bool is_min = true;
        for (CellId e : K.cofaces(v)) {
            if (K.dim(e) != 1)
                continue;
            CellId w = K.faces(e)[0] == v ? K.faces(e)[1] : K.faces(e)[0];
            if (vf.less(w, v))
                is_min = false;
        }
        if (is_min)
            minima.insert(v);
    }
    return minima;
}

// Random small complex: paths, circles and grids up to 8x8.
inline CellComplex random_complex(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    switch (pick(rng)) {
    case 0: {
        std::uniform_int_distribution<int> n(2, 16);
        return path_complex(n(rng));
    }
    case 1: {
        std::uniform_int_distribution<int> n(3, 16);
        return circle_complex(n(rng));
    }
    default: {
        std::uniform_int_distribution<int> n(2, 8);
        return freudenthal_grid(n(rng), n(rng));
    }
    }
}

// Injective vertex values: a shuffled permutation of 0..nv-1.
inline VertexField random_values(const CellComplex& K, std::mt19937& rng) {
    std::size_t nv = K.count_of_dim(0);
    std::vector<double> vals(nv);
    for (std::size_t i = 0; i < nv; ++i)
        vals[i] = static_cast<double>(i);
    std::shuffle(vals.begin(), vals.end(), rng);
    return VertexField{std::move(vals)};
}

inline std::set<CellId> as_set(const std::vector<CellId>& v) {
    return std::set<CellId>(v.begin(), v.end());
}

} // namespace testsupport

#endif
