#include "morsetrack/persistence.hpp"

#include <algorithm>
#include <string>

#include "morsetrack/errors.hpp"

namespace morsetrack {

namespace {

// Memoized V-path counting toward a fixed target.  Counts saturate at
// cap + 1; the graph is a DAG on gradient fields so plain recursion with a
// visit stamp is enough.  Reused across queries to avoid reallocation.
class PathCounter {
public:
    explicit PathCounter(std::size_t ncells)
        : memo_(ncells, 0), stamp_(ncells, 0) {}

    // Paths from the faces of beta ending at alpha.
    std::uint64_t count(const CellComplex& K, const DiscreteVectorField& V,
                        CellId beta, CellId alpha, std::uint64_t cap) {
        ++round_;
        target_ = alpha;
        sat_ = cap + 1;
        std::uint64_t total = 0;
        for (CellId f : K.faces(beta))
            total = std::min(total + from(K, V, f), sat_);
        return total;
    }

private:
    std::uint64_t from(const CellComplex& K, const DiscreteVectorField& V,
                       CellId a) {
        if (a == target_)
            return 1;
        CellId up = V.up(a);
        if (up == kNoCell)
            return 0;
        if (stamp_[static_cast<std::size_t>(a)] == round_)
            return memo_[static_cast<std::size_t>(a)];
        stamp_[static_cast<std::size_t>(a)] = round_;
        memo_[static_cast<std::size_t>(a)] = 0; // settles below; DAG, no revisit mid-flight
        std::uint64_t n = 0;
        for (CellId f : K.faces(up))
            if (f != a)
                n = std::min(n + from(K, V, f), sat_);
        memo_[static_cast<std::size_t>(a)] = n;
        return n;
    }

    std::vector<std::uint64_t> memo_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t round_ = 0;
    CellId target_ = kNoCell;
    std::uint64_t sat_ = 0;
};

// The unique path from a face of beta down to alpha, as the alternating
// cell sequence a0, b0, a1, ..., ak = alpha.  Assumes exactly one exists.
std::vector<CellId> find_unique_path(const CellComplex& K,
                                     const DiscreteVectorField& V, CellId beta,
                                     CellId alpha) {
    std::vector<CellId> path;
    auto walk = [&](auto&& self, CellId a) -> bool {
        path.push_back(a);
        if (a == alpha)
            return true;
        CellId up = V.up(a);
        if (up != kNoCell) {
            path.push_back(up);
            for (CellId f : K.faces(up))
                if (f != a && self(self, f))
                    return true;
            path.pop_back();
        }
        path.pop_back();
        return false;
    };
    for (CellId f : K.faces(beta))
        if (walk(walk, f))
            return path;
    throw PipelineError("cancel_pair: no connecting path found");
}

void cancel_in_place(const CellComplex& K, DiscreteVectorField& V, CellId alpha,
                     CellId beta) {
    std::vector<CellId> path = find_unique_path(K, V, beta, alpha);
    // path = a0, b0, a1, b1, ..., ak; reverse every arrow and close with beta.
    for (std::size_t i = 0; i + 1 < path.size(); i += 2)
        V.unpair(path[i]);
    V.pair(K, path[0], beta);
    for (std::size_t i = 2; i < path.size(); i += 2)
        V.pair(K, path[i], path[i - 1]);
}

} // namespace

std::uint64_t gradient_paths_between(const CellComplex& K,
                                     const DiscreteVectorField& V, CellId beta,
                                     CellId alpha, std::uint64_t cap) {
    if (K.dim(beta) != K.dim(alpha) + 1)
        throw InputError("gradient_paths_between: dim(beta) must be dim(alpha)+1");
    PathCounter counter(K.size());
    std::uint64_t n = counter.count(K, V, beta, alpha, cap);
    if (n > cap)
        throw CapExceeded("gradient_paths_between: more than " +
                          std::to_string(cap) + " paths");
    return n;
}

DiscreteVectorField cancel_pair(const CellComplex& K, DiscreteVectorField V,
                                CellId alpha, CellId beta, std::uint64_t cap) {
    if (!V.is_critical(alpha) || !V.is_critical(beta))
        throw PipelineError("cancel_pair: both cells must be critical");
    std::uint64_t n = gradient_paths_between(K, V, beta, alpha, cap);
    if (n != 1)
        throw PipelineError("cancel_pair: need exactly one connecting path, found " +
                            std::to_string(n));
    cancel_in_place(K, V, alpha, beta);
    return V;
}

DiscreteVectorField persistence_simplify(const CellComplex& K,
                                         DiscreteVectorField V,
                                         const VertexField& vf, double p,
                                         std::uint64_t cap) {
    if (p < 0)
        throw InputError("persistence_simplify: persistence level must be >= 0");
    if (p == 0)
        return V;

    std::vector<double> value(K.size());
    for (std::size_t i = 0; i < K.size(); ++i)
        value[i] = cell_value(K, vf, static_cast<CellId>(i));

    // Candidates are all critical pairs in adjacent dimensions whose value
    // difference is inside the threshold.  Persistence depends only on the
    // values, never on the current field, so the sorted order is computed
    // once; validity (both still critical, exactly one path) is re-checked
    // on every round.  The least valid candidate is always cancelled first.
    struct Candidate {
        double pers;
        int dim;
        CellId alpha, beta;
    };
    std::vector<Candidate> candidates;
    {
        std::vector<CellId> crit = critical_cells(K, V);
        std::vector<std::vector<CellId>> by_dim(static_cast<std::size_t>(K.max_dim()) + 1);
        for (CellId c : crit)
            by_dim[static_cast<std::size_t>(K.dim(c))].push_back(c);
        for (int d = 0; d < K.max_dim(); ++d)
            for (CellId a : by_dim[static_cast<std::size_t>(d)])
                for (CellId b : by_dim[static_cast<std::size_t>(d) + 1]) {
                    double pers = value[static_cast<std::size_t>(b)] -
                                  value[static_cast<std::size_t>(a)];
                    if (pers >= 0 && pers < p)
                        candidates.push_back({pers, d, a, b});
                }
        std::sort(candidates.begin(), candidates.end(), [](const Candidate& x,
                                                           const Candidate& y) {
            return std::tie(x.pers, x.dim, x.alpha, x.beta) <
                   std::tie(y.pers, y.dim, y.alpha, y.beta);
        });
    }

    PathCounter counter(K.size());
    std::vector<bool> dead(candidates.size(), false);
    while (true) {
        bool cancelled = false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (dead[i])
                continue;
            const Candidate& c = candidates[i];
            if (!V.is_critical(c.alpha) || !V.is_critical(c.beta)) {
                dead[i] = true;
                continue;
            }
            std::uint64_t n = counter.count(K, V, c.beta, c.alpha, cap);
            if (n > cap)
                throw CapExceeded("persistence_simplify: path count cap exceeded");
            if (n == 1) {
                cancel_in_place(K, V, c.alpha, c.beta);
                dead[i] = true;
                cancelled = true;
                break;
            }
        }
        if (!cancelled)
            break;
    }
    return V;
}

} // namespace morsetrack
