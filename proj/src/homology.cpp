#include "morsetrack/homology.hpp"

#include <cstdint>

namespace morsetrack {

namespace {

// Rank over GF(2) of the boundary matrix from dimension p to p-1.
// Rows = p-cells as bit vectors over (p-1)-cells.
long long boundary_rank(const CellComplex& K, int p,
                        const std::vector<CellId>& rows,
                        const std::vector<int>& col_index, std::size_t ncols) {
    if (rows.empty() || ncols == 0)
        return 0;
    const std::size_t words = (ncols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> mat;
    mat.reserve(rows.size());
    for (CellId c : rows) {
        std::vector<std::uint64_t> row(words, 0);
        for (CellId f : K.faces(c)) {
            int col = col_index[static_cast<std::size_t>(f)];
            row[static_cast<std::size_t>(col) / 64] ^= 1ULL << (col % 64);
        }
        mat.push_back(std::move(row));
    }
    long long rank = 0;
    std::size_t row_at = 0;
    for (std::size_t col = 0; col < ncols && row_at < mat.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = 1ULL << (col % 64);
        std::size_t pivot = row_at;
        while (pivot < mat.size() && !(mat[pivot][w] & bit))
            ++pivot;
        if (pivot == mat.size())
            continue;
        std::swap(mat[row_at], mat[pivot]);
        for (std::size_t r = 0; r < mat.size(); ++r) {
            if (r != row_at && (mat[r][w] & bit))
                for (std::size_t k = 0; k < words; ++k)
                    mat[r][k] ^= mat[row_at][k];
        }
        ++row_at;
        ++rank;
    }
    return rank;
}

} // namespace

std::vector<long long> betti_mod2(const CellComplex& K) {
    const int top = K.max_dim();
    if (top < 0)
        return {};
    std::vector<std::vector<CellId>> by_dim(static_cast<std::size_t>(top) + 1);
    for (std::size_t i = 0; i < K.size(); ++i)
        by_dim[static_cast<std::size_t>(K.dim(static_cast<CellId>(i)))].push_back(
            static_cast<CellId>(i));

    std::vector<int> col_index(K.size(), -1);
    std::vector<long long> rank(static_cast<std::size_t>(top) + 2, 0);
    for (int p = 1; p <= top; ++p) {
        const auto& cols = by_dim[static_cast<std::size_t>(p - 1)];
        for (std::size_t i = 0; i < cols.size(); ++i)
            col_index[static_cast<std::size_t>(cols[i])] = static_cast<int>(i);
        rank[static_cast<std::size_t>(p)] =
            boundary_rank(K, p, by_dim[static_cast<std::size_t>(p)], col_index,
                          cols.size());
    }

    std::vector<long long> betti(static_cast<std::size_t>(top) + 1, 0);
    for (int p = 0; p <= top; ++p) {
        long long n_p = static_cast<long long>(by_dim[static_cast<std::size_t>(p)].size());
        // dim ker d_p - rank d_{p+1}
        betti[static_cast<std::size_t>(p)] =
            n_p - rank[static_cast<std::size_t>(p)] - rank[static_cast<std::size_t>(p) + 1];
    }
    return betti;
}

} // namespace morsetrack
