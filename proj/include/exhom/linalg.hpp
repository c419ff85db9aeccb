#pragma once

// Dense exact linear algebra on Eigen matrices over the scalar types from
// fields.hpp.  Row reduction over finite fields is plain Gauss-Jordan with
// first-nonzero pivoting; over the rationals rows are cleared to integers and
// reduced with fraction-free (Bareiss) elimination before a rational
// back-substitution pass, which keeps intermediate entries from exploding on
// the cone-stacked matrices produced upstream.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "exhom/fields.hpp"

namespace exhom {

using Index = Eigen::Index;

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

template <class K>
concept field_scalar = requires { typename K::Field; };

// ---------------------------------------------------------------------------
// Small matrix helpers.

template <field_scalar K>
Mat<K> zeros(const typename K::Field& F, Index r, Index c) {
    Mat<K> m(r, c);
    m.setConstant(F.zero());
    return m;
}

template <field_scalar K>
Mat<K> eye(const typename K::Field& F, Index n) {
    Mat<K> m = zeros<K>(F, n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = F.one();
    return m;
}

template <class K>
bool mat_eq(const Mat<K>& a, const Mat<K>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

template <class K>
bool is_zero_mat(const Mat<K>& a) {
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (!a(i, j).is_zero()) return false;
    return true;
}

template <class K>
Mat<K> hstack(const Mat<K>& a, const Mat<K>& b) {
    Mat<K> r(a.rows(), a.cols() + b.cols());
    r.leftCols(a.cols()) = a;
    r.rightCols(b.cols()) = b;
    return r;
}

template <class K>
Mat<K> vstack(const Mat<K>& a, const Mat<K>& b) {
    Mat<K> r(a.rows() + b.rows(), a.cols());
    r.topRows(a.rows()) = a;
    r.bottomRows(b.rows()) = b;
    return r;
}

template <field_scalar K>
Mat<K> block_diag(const typename K::Field& F, const std::vector<Mat<K>>& blocks) {
    Index r = 0, c = 0;
    for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
    Mat<K> m = zeros<K>(F, r, c);
    Index i = 0, j = 0;
    for (const auto& b : blocks) {
        m.block(i, j, b.rows(), b.cols()) = b;
        i += b.rows();
        j += b.cols();
    }
    return m;
}

template <field_scalar K>
Mat<K> kron(const typename K::Field& F, const Mat<K>& a, const Mat<K>& b) {
    Mat<K> m = zeros<K>(F, a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            for (Index k = 0; k < b.rows(); ++k)
                for (Index l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return m;
}

template <field_scalar K>
void check_field(const typename K::Field& F, const Mat<K>& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!F.owns(m(i, j)))
                throw FieldError("matrix entry does not belong to the expected field");
}

// ---------------------------------------------------------------------------
// Reduced row echelon form.
//
// Pivot rule: columns are processed left to right, taking the first row (in
// current order) with a nonzero entry.  The RREF and hence kernel bases are
// canonical, which golden-file tests rely on.

template <class K>
struct Rref {
    Mat<K> r;                        // the reduced matrix
    std::vector<Index> pivot_cols;   // ascending
};

namespace detail {

template <field_scalar K>
Rref<K> rref_generic(const typename K::Field& F, Mat<K> a) {
    std::vector<Index> pivots;
    Index row = 0;
    for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Index pr = -1;
        for (Index i = row; i < a.rows(); ++i) {
            if (!a(i, col).is_zero()) { pr = i; break; }
        }
        if (pr < 0) continue;
        if (pr != row) a.row(pr).swap(a.row(row));
        const K piv_inv = a(row, col).inv();
        for (Index j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * piv_inv;
        for (Index i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            const K f = a(i, col);
            for (Index j = col; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

// Fraction-free echelon pass over the integers (Bareiss), then a rational
// back-substitution to reach RREF.
Rref<Rat> rref_rational(Mat<Rat> a);

}  // namespace detail

template <field_scalar K>
Rref<K> rref(const typename K::Field& F, const Mat<K>& a) {
    check_field<K>(F, a);
    if constexpr (std::is_same_v<K, Rat>) {
        return detail::rref_rational(a);
    } else {
        return detail::rref_generic<K>(F, a);
    }
}

// ---------------------------------------------------------------------------
// rank / kernel / image, and exact linear solve.

template <class K>
struct RankProfile {
    Index rank = 0;
    std::vector<Index> pivot_cols;
    Mat<K> kernel_basis;  // cols x (cols - rank), independent, annihilated
    Mat<K> image_basis;   // rows x rank, pivot columns of the input
};

template <field_scalar K>
RankProfile<K> rank_profile(const typename K::Field& F, const Mat<K>& m) {
    Rref<K> e = rref<K>(F, m);
    RankProfile<K> rp;
    rp.rank = static_cast<Index>(e.pivot_cols.size());
    rp.pivot_cols = e.pivot_cols;

    rp.image_basis = Mat<K>(m.rows(), rp.rank);
    for (Index k = 0; k < rp.rank; ++k) rp.image_basis.col(k) = m.col(e.pivot_cols[k]);

    std::vector<bool> is_pivot(m.cols(), false);
    for (Index c : e.pivot_cols) is_pivot[c] = true;
    rp.kernel_basis = zeros<K>(F, m.cols(), m.cols() - rp.rank);
    Index k = 0;
    for (Index j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        rp.kernel_basis(j, k) = F.one();
        for (Index i = 0; i < rp.rank; ++i)
            rp.kernel_basis(e.pivot_cols[i], k) = -e.r(i, j);
        ++k;
    }
    return rp;
}

template <field_scalar K>
Index rank_of(const typename K::Field& F, const Mat<K>& m) {
    return static_cast<Index>(rref<K>(F, m).pivot_cols.size());
}

// Solves a*x = b exactly; std::nullopt when inconsistent.
template <field_scalar K>
std::optional<Mat<K>> solve_linear(const typename K::Field& F, const Mat<K>& a, const Mat<K>& b) {
    if (a.rows() != b.rows()) throw FieldError("solve_linear: row mismatch");
    Rref<K> e = rref<K>(F, hstack(a, b));
    for (Index c : e.pivot_cols)
        if (c >= a.cols()) return std::nullopt;
    Mat<K> x = zeros<K>(F, a.cols(), b.cols());
    for (Index i = 0; i < static_cast<Index>(e.pivot_cols.size()); ++i)
        x.row(e.pivot_cols[i]) = e.r.block(i, a.cols(), 1, b.cols());
    return x;
}

// x -> x^(p^power) applied entrywise; a field automorphism fixing GF(p).
template <field_scalar K>
Mat<K> frobenius_map(const typename K::Field& F, const Mat<K>& m, std::uint32_t power) {
    if constexpr (is_extension_scalar<K>::value) {
        Mat<K> r = m;
        for (Index j = 0; j < r.cols(); ++j)
            for (Index i = 0; i < r.rows(); ++i) r(i, j) = r(i, j).frobenius(power);
        return r;
    } else {
        if (power > 0)
            throw FieldError("unsupported automorphism: field has no Frobenius power");
        return m;
    }
}

}  // namespace exhom
