#include "morsetrack/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "morsetrack/errors.hpp"

namespace morsetrack {

CellComplex path_complex(int n) {
    if (n < 2)
        throw InputError("path_complex: need n >= 2, got " + std::to_string(n));
    CellComplex K;
    for (int i = 0; i < n; ++i) {
        CellId v = K.add_cell(0, {});
        K.set_anchor(v, {static_cast<double>(i), 0.0});
    }
    for (int i = 0; i + 1 < n; ++i)
        K.add_cell(1, {static_cast<CellId>(i), static_cast<CellId>(i + 1)});
    return K;
}

CellComplex circle_complex(int n) {
    if (n < 3)
        throw InputError("circle_complex: need n >= 3, got " + std::to_string(n));
    CellComplex K;
    for (int i = 0; i < n; ++i) {
        CellId v = K.add_cell(0, {});
        double a = 2.0 * std::numbers::pi * i / n;
        K.set_anchor(v, {std::cos(a), std::sin(a)});
    }
    for (int i = 0; i < n; ++i)
        K.add_cell(1, {static_cast<CellId>(i), static_cast<CellId>((i + 1) % n)});
    return K;
}

CellComplex freudenthal_grid(int w, int h, double origin_x, double origin_y,
                             double dx, double dy) {
    if (w < 2 || h < 2)
        throw InputError("freudenthal_grid: need w, h >= 2");
    CellComplex K;
    auto vid = [w](int i, int j) { return static_cast<CellId>(j * w + i); };
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            CellId v = K.add_cell(0, {});
            K.set_anchor(v, {origin_x + i * dx, origin_y + j * dy});
        }

    // Edge ids per square corner; the diagonal runs (i,j)-(i+1,j+1).
    std::vector<CellId> horiz(static_cast<std::size_t>(w) * h, kNoCell);
    std::vector<CellId> vert(static_cast<std::size_t>(w) * h, kNoCell);
    std::vector<CellId> diag(static_cast<std::size_t>(w) * h, kNoCell);
    auto at = [w](int i, int j) { return static_cast<std::size_t>(j * w + i); };
    for (int j = 0; j < h; ++j)
        for (int i = 0; i + 1 < w; ++i)
            horiz[at(i, j)] = K.add_cell(1, {vid(i, j), vid(i + 1, j)});
    for (int j = 0; j + 1 < h; ++j)
        for (int i = 0; i < w; ++i)
            vert[at(i, j)] = K.add_cell(1, {vid(i, j), vid(i, j + 1)});
    for (int j = 0; j + 1 < h; ++j)
        for (int i = 0; i + 1 < w; ++i)
            diag[at(i, j)] = K.add_cell(1, {vid(i, j), vid(i + 1, j + 1)});

    for (int j = 0; j + 1 < h; ++j)
        for (int i = 0; i + 1 < w; ++i) {
            K.add_cell(2, {horiz[at(i, j)], vert[at(i + 1, j)], diag[at(i, j)]});
            K.add_cell(2, {vert[at(i, j)], horiz[at(i, j + 1)], diag[at(i, j)]});
        }
    return K;
}

CellComplex torus_complex() {
    CellComplex K;
    for (int i = 0; i < 7; ++i) {
        CellId v = K.add_cell(0, {});
        double a = 2.0 * std::numbers::pi * i / 7;
        K.set_anchor(v, {std::cos(a), std::sin(a)});
    }
    // Complete graph on 7 vertices; edge_id[u][v] for u < v.
    CellId edge_id[7][7];
    for (int u = 0; u < 7; ++u)
        for (int v = u + 1; v < 7; ++v)
            edge_id[u][v] = K.add_cell(1, {static_cast<CellId>(u), static_cast<CellId>(v)});
    auto edge = [&](int a, int b) {
        if (a > b)
            std::swap(a, b);
        return edge_id[a][b];
    };
    // Two Z7 orbits of triangles: {i, i+1, i+3} and {i, i+2, i+3}.
    for (int i = 0; i < 7; ++i) {
        int a = i, b = (i + 1) % 7, c = (i + 3) % 7;
        K.add_cell(2, {edge(a, b), edge(b, c), edge(a, c)});
    }
    for (int i = 0; i < 7; ++i) {
        int a = i, b = (i + 2) % 7, c = (i + 3) % 7;
        K.add_cell(2, {edge(a, b), edge(b, c), edge(a, c)});
    }
    return K;
}

} // namespace morsetrack
