#include "morsetrack/cell_complex.hpp"

#include <algorithm>
#include <string>

#include "morsetrack/errors.hpp"

namespace morsetrack {

CellId CellComplex::add_cell(int dim, std::span<const CellId> faces,
                             CellKind kind, int layer) {
    if (dim < 0)
        throw InputError("add_cell: negative dimension");
    if (dim == 0 && !faces.empty())
        throw InputError("add_cell: a vertex has no faces");
    if (dim >= 1 && faces.size() < 2)
        throw InputError("add_cell: a cell of dimension " + std::to_string(dim) +
                         " needs at least 2 faces");
    for (std::size_t i = 0; i < faces.size(); ++i) {
        CellId f = faces[i];
        if (f < 0 || static_cast<std::size_t>(f) >= dims_.size())
            throw InputError("add_cell: unknown face id " + std::to_string(f));
        if (dims_[static_cast<std::size_t>(f)] != dim - 1)
            throw InputError("add_cell: face " + std::to_string(f) +
                             " has dimension " +
                             std::to_string(dims_[static_cast<std::size_t>(f)]) +
                             ", expected " + std::to_string(dim - 1));
        for (std::size_t j = 0; j < i; ++j)
            if (faces[j] == f)
                throw InputError("add_cell: duplicate face " + std::to_string(f));
    }

    CellId id = static_cast<CellId>(dims_.size());
    dims_.push_back(dim);
    kinds_.push_back(kind);
    layers_.push_back(layer);
    faces_.emplace_back(faces.begin(), faces.end());
    cofaces_.emplace_back();
    anchors_.push_back(Anchor{});
    has_anchor_.push_back(false);
    for (CellId f : faces)
        cofaces_[static_cast<std::size_t>(f)].push_back(id);
    max_dim_ = std::max(max_dim_, dim);
    return id;
}

CellId CellComplex::add_cell(int dim, std::initializer_list<CellId> faces,
                             CellKind kind, int layer) {
    return add_cell(dim, std::span<const CellId>(faces.begin(), faces.size()),
                    kind, layer);
}

void CellComplex::set_anchor(CellId c, Anchor a) {
    anchors_[static_cast<std::size_t>(c)] = a;
    has_anchor_[static_cast<std::size_t>(c)] = true;
}

std::optional<Anchor> CellComplex::anchor(CellId c) const {
    if (!has_anchor_[static_cast<std::size_t>(c)])
        return std::nullopt;
    return anchors_[static_cast<std::size_t>(c)];
}

std::size_t CellComplex::count_of_dim(int p) const {
    std::size_t n = 0;
    for (int d : dims_)
        if (d == p)
            ++n;
    return n;
}

std::vector<CellId> CellComplex::cells_of_dim(int p) const {
    std::vector<CellId> out;
    for (std::size_t i = 0; i < dims_.size(); ++i)
        if (dims_[i] == p)
            out.push_back(static_cast<CellId>(i));
    return out;
}

std::vector<CellId> CellComplex::vertices_of(CellId c) const {
    std::vector<CellId> stack{c};
    std::vector<CellId> verts;
    while (!stack.empty()) {
        CellId cur = stack.back();
        stack.pop_back();
        if (dim(cur) == 0) {
            verts.push_back(cur);
            continue;
        }
        for (CellId f : faces(cur))
            stack.push_back(f);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

bool CellComplex::same_structure(const CellComplex& other) const {
    return dims_ == other.dims_ && faces_ == other.faces_;
}

long long euler_characteristic(const CellComplex& K) {
    long long chi = 0;
    for (std::size_t i = 0; i < K.size(); ++i)
        chi += (K.dim(static_cast<CellId>(i)) % 2 == 0) ? 1 : -1;
    return chi;
}

} // namespace morsetrack
