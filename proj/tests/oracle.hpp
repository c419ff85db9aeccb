#pragma once

// Test-only reference implementations, kept deliberately naive and fully
// independent of the library's elimination and cohomology paths.  Everything
// here touches scalars through their arithmetic operators only.

#include <vector>

#include "exhom/linalg.hpp"

namespace oracle {

using exhom::Index;
using exhom::Mat;

// Plain Gauss elimination rank: partial pivot = first nonzero, forward only.
template <class K>
Index naive_rank(Mat<K> a) {
    const Index m = a.rows(), n = a.cols();
    Index rank = 0;
    for (Index col = 0; col < n && rank < m; ++col) {
        Index pr = -1;
        for (Index i = rank; i < m; ++i) {
            if (!a(i, col).is_zero()) { pr = i; break; }
        }
        if (pr < 0) continue;
        if (pr != rank) a.row(pr).swap(a.row(rank));
        for (Index i = rank + 1; i < m; ++i) {
            if (a(i, col).is_zero()) continue;
            const K f = a(i, col) / a(rank, col);
            for (Index j = col; j < n; ++j) a(i, j) = a(i, j) - f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Cohomology dimensions of a chain of matrices d[q]: C^q -> C^(q+1), given as
// dims plus differentials; h^q = dim ker d^q - rank d^(q-1).
template <class K>
std::vector<Index> naive_cohomology_dims(const std::vector<Index>& dims,
                                         const std::vector<Mat<K>>& diffs) {
    const std::size_t len = dims.size();
    std::vector<Index> ranks(len, 0);  // ranks[q] = rank d^q (d^last = 0)
    for (std::size_t q = 0; q + 1 < len; ++q) ranks[q] = naive_rank(diffs[q]);
    std::vector<Index> h(len, 0);
    for (std::size_t q = 0; q < len; ++q) {
        const Index rank_out = q + 1 < len ? ranks[q] : 0;
        const Index rank_in = q > 0 ? ranks[q - 1] : 0;
        h[q] = dims[q] - rank_out - rank_in;
    }
    return h;
}

}  // namespace oracle
