#include "morsetrack/vector_field.hpp"

#include <algorithm>
#include <string>

#include "morsetrack/errors.hpp"

namespace morsetrack {

void DiscreteVectorField::pair(const CellComplex& K, CellId tail, CellId head) {
    if (K.dim(head) != K.dim(tail) + 1)
        throw InputError("pair: head must be one dimension above tail");
    const auto& fl = K.faces(head);
    if (std::find(fl.begin(), fl.end(), tail) == fl.end())
        throw InputError("pair: tail " + std::to_string(tail) +
                         " is not a face of head " + std::to_string(head));
    if (up_[static_cast<std::size_t>(tail)] != kNoCell ||
        down_[static_cast<std::size_t>(tail)] != kNoCell)
        throw InputError("pair: cell " + std::to_string(tail) + " already paired");
    if (up_[static_cast<std::size_t>(head)] != kNoCell ||
        down_[static_cast<std::size_t>(head)] != kNoCell)
        throw InputError("pair: cell " + std::to_string(head) + " already paired");
    up_[static_cast<std::size_t>(tail)] = head;
    down_[static_cast<std::size_t>(head)] = tail;
}

void DiscreteVectorField::unpair(CellId tail) {
    CellId head = up_[static_cast<std::size_t>(tail)];
    if (head == kNoCell)
        return;
    up_[static_cast<std::size_t>(tail)] = kNoCell;
    down_[static_cast<std::size_t>(head)] = kNoCell;
}

std::size_t DiscreteVectorField::pair_count() const {
    std::size_t n = 0;
    for (CellId h : up_)
        if (h != kNoCell)
            ++n;
    return n;
}

CellClass classify(const DiscreteVectorField& V, CellId c) {
    if (V.up(c) != kNoCell)
        return CellClass::ArrowTail;
    if (V.down(c) != kNoCell)
        return CellClass::ArrowHead;
    return CellClass::Critical;
}

std::vector<CellId> critical_cells(const CellComplex& K,
                                   const DiscreteVectorField& V) {
    std::vector<CellId> out;
    for (std::size_t i = 0; i < K.size(); ++i)
        if (V.is_critical(static_cast<CellId>(i)))
            out.push_back(static_cast<CellId>(i));
    return out;
}

std::vector<std::size_t> critical_counts(const CellComplex& K,
                                         const DiscreteVectorField& V) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(K.max_dim()) + 1, 0);
    for (std::size_t i = 0; i < K.size(); ++i)
        if (V.is_critical(static_cast<CellId>(i)))
            ++counts[static_cast<std::size_t>(K.dim(static_cast<CellId>(i)))];
    return counts;
}

namespace {

// Iterative 3-color DFS over the modified Hasse digraph restricted to cells
// of dimensions p and p+1.  Out-edges: a (p+1)-cell points to each face
// except its own tail; a p-cell points to its matched coface only.
bool level_has_cycle(const CellComplex& K, const DiscreteVectorField& V, int p) {
    enum : unsigned char { WHITE, GRAY, BLACK };
    std::vector<unsigned char> color(K.size(), WHITE);

    std::vector<std::pair<CellId, std::size_t>> stack;
    for (std::size_t s = 0; s < K.size(); ++s) {
        CellId start = static_cast<CellId>(s);
        int d = K.dim(start);
        if ((d != p && d != p + 1) || color[s] != WHITE)
            continue;
        stack.clear();
        stack.emplace_back(start, 0);
        color[s] = GRAY;
        while (!stack.empty()) {
            auto& [c, next] = stack.back();
            CellId succ = kNoCell;
            if (K.dim(c) == p) {
                if (next == 0) {
                    next = 1;
                    succ = V.up(c); // may be kNoCell
                }
            } else {
                const auto& fl = K.faces(c);
                while (next < fl.size()) {
                    CellId f = fl[next++];
                    if (V.down(c) != f) { // matched edge is reversed
                        succ = f;
                        break;
                    }
                }
            }
            if (succ == kNoCell) {
                if ((K.dim(c) == p && next >= 1) ||
                    (K.dim(c) == p + 1 && next >= K.faces(c).size())) {
                    color[static_cast<std::size_t>(c)] = BLACK;
                    stack.pop_back();
                }
                continue;
            }
            unsigned char sc = color[static_cast<std::size_t>(succ)];
            if (sc == GRAY)
                return true;
            if (sc == WHITE) {
                color[static_cast<std::size_t>(succ)] = GRAY;
                stack.emplace_back(succ, 0);
            }
        }
    }
    return false;
}

} // namespace

bool is_gradient(const CellComplex& K, const DiscreteVectorField& V) {
    for (int p = 0; p < K.max_dim(); ++p)
        if (level_has_cycle(K, V, p))
            return false;
    return true;
}

CellId descend_vertex(const CellComplex& K, const DiscreteVectorField& V,
                      CellId v) {
    std::size_t guard = K.size() + 1;
    while (V.up(v) != kNoCell) {
        CellId e = V.up(v);
        const auto& f = K.faces(e);
        v = (f[0] == v) ? f[1] : f[0];
        if (--guard == 0)
            throw PipelineError("descend_vertex: cycle detected (field is not gradient)");
    }
    return v;
}

std::vector<VPath> vpaths_from(const CellComplex& K,
                               const DiscreteVectorField& V, CellId beta,
                               std::uint64_t cap) {
    std::vector<VPath> out;
    std::vector<CellId> prefix;

    // Depth-first over the branching structure: from each (p+1)-cell, every
    // face other than the current tail spawns a continuation.
    auto extend = [&](auto&& self, CellId alpha) -> void {
        prefix.push_back(alpha);
        CellId up = V.up(alpha);
        if (up == kNoCell) {
            if (out.size() >= cap)
                throw CapExceeded("vpaths_from: path count cap exceeded");
            out.push_back(VPath{prefix});
        } else {
            prefix.push_back(up);
            for (CellId f : K.faces(up))
                if (f != alpha)
                    self(self, f);
            prefix.pop_back();
        }
        prefix.pop_back();
    };

    for (CellId f : K.faces(beta))
        extend(extend, f);
    return out;
}

} // namespace morsetrack
