#include "exhom/linalg.hpp"

namespace exhom::detail {

// Bareiss fraction-free elimination with first-nonzero column pivoting.
// Rows are first scaled to integers (rank, pivot columns and kernels are
// unchanged by row scaling); the forward pass stays in mpz with exact
// divisions, the upward pass normalises to RREF in mpq.
Rref<Rat> rref_rational(Mat<Rat> a) {
    const Index m = a.rows(), n = a.cols();
    std::vector<std::vector<mpz_class>> M(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
        mpz_class l = 1;
        for (Index j = 0; j < n; ++j) l = lcm(l, a(i, j).raw().get_den());
        auto& row = M[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(n));
        for (Index j = 0; j < n; ++j) {
            const mpq_class v = a(i, j).raw() * l;
            row[static_cast<std::size_t>(j)] = v.get_num();  // denominator is 1
        }
    }

    std::vector<Index> pivots;
    mpz_class prev = 1;
    Index r = 0;
    for (Index c = 0; c < n && r < m; ++c) {
        Index pr = -1;
        for (Index i = r; i < m; ++i) {
            if (M[i][c] != 0) { pr = i; break; }
        }
        if (pr < 0) continue;
        if (pr != r) std::swap(M[pr], M[r]);
        const mpz_class piv = M[r][c];
        for (Index i = r + 1; i < m; ++i) {
            const mpz_class f = M[i][c];
            for (Index j = c + 1; j < n; ++j) {
                mpz_class t = piv * M[i][j] - f * M[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                M[i][j] = std::move(t);
            }
            M[i][c] = 0;
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }

    // upward pass in mpq
    const Index rank = static_cast<Index>(pivots.size());
    std::vector<std::vector<mpq_class>> R(static_cast<std::size_t>(rank));
    for (Index i = 0; i < rank; ++i) {
        auto& row = R[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(n));
        const mpz_class piv = M[i][pivots[i]];
        for (Index j = 0; j < n; ++j) {
            mpq_class q(M[i][j], piv);
            q.canonicalize();
            row[static_cast<std::size_t>(j)] = std::move(q);
        }
    }
    for (Index i = rank - 1; i >= 0; --i) {
        for (Index k = 0; k < i; ++k) {
            const mpq_class f = R[k][pivots[i]];
            if (f == 0) continue;
            for (Index j = pivots[i]; j < n; ++j) R[k][j] -= f * R[i][j];
        }
    }

    Rref<Rat> out;
    out.pivot_cols = std::move(pivots);
    out.r = Mat<Rat>(m, n);
    out.r.setConstant(Rat(0));
    for (Index i = 0; i < rank; ++i)
        for (Index j = 0; j < n; ++j) out.r(i, j) = Rat(R[i][j]);
    return out;
}

}  // namespace exhom::detail
