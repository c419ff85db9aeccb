#pragma once

// Bounded double complexes, total complexes, and exact computation of the
// spectral-sequence pages of the filtered total complex.
//
// Page subquotients are never materialised: E_r^{p,q} dimensions and d_r
// ranks come from rank arithmetic on explicit spanning sets
//     E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + B_{r-1}^{p,q}),
//     Z_r^{p,q} = { x in F^p Tot^{p+q} : dx in F^{p+r} Tot^{p+q+1} },
//     B_{r-1}^{p,q} = d Z_{r-1}^{p-r+1, q+r-2},
// where F^p is the column filtration.  The row filtration runs the same
// machinery on the transposed double complex.

#include <map>
#include <tuple>

#include "exhom/complexes.hpp"

namespace exhom {

template <field_scalar K>
struct DoubleCplx {
    using F = typename K::Field;

    F field;
    int plo = 0, qlo = 0;
    std::vector<std::vector<Index>> dims;  // [pi][qi]
    std::vector<std::vector<Mat<K>>> dh;   // (p,q) -> (p+1,q)
    std::vector<std::vector<Mat<K>>> dv;   // (p,q) -> (p,q+1)

    int phi() const { return plo + static_cast<int>(dims.size()) - 1; }
    int qhi() const { return dims.empty() ? qlo - 1 : qlo + static_cast<int>(dims[0].size()) - 1; }

    Index dim(int p, int q) const {
        if (p < plo || p > phi() || q < qlo || q > qhi()) return 0;
        return dims[static_cast<std::size_t>(p - plo)][static_cast<std::size_t>(q - qlo)];
    }

    Mat<K> dh_at(int p, int q) const {
        if (p >= plo && p < phi() && q >= qlo && q <= qhi())
            return dh[static_cast<std::size_t>(p - plo)][static_cast<std::size_t>(q - qlo)];
        return zeros<K>(field, dim(p + 1, q), dim(p, q));
    }

    Mat<K> dv_at(int p, int q) const {
        if (p >= plo && p <= phi() && q >= qlo && q < qhi())
            return dv[static_cast<std::size_t>(p - plo)][static_cast<std::size_t>(q - qlo)];
        return zeros<K>(field, dim(p, q + 1), dim(p, q));
    }

    DoubleCplx(F f, int plo_, int qlo_, std::vector<std::vector<Index>> dims_,
               std::vector<std::vector<Mat<K>>> dh_, std::vector<std::vector<Mat<K>>> dv_)
        : field(std::move(f)),
          plo(plo_),
          qlo(qlo_),
          dims(std::move(dims_)),
          dh(std::move(dh_)),
          dv(std::move(dv_)) {
        validate();
    }

    // commuting squares on input; the vertical maps in column p get the
    // (-1)^p twist here
    static DoubleCplx from_commuting(F f, int plo_, int qlo_,
                                     std::vector<std::vector<Index>> dims_,
                                     std::vector<std::vector<Mat<K>>> dh_,
                                     std::vector<std::vector<Mat<K>>> dv_) {
        for (std::size_t pi = 0; pi < dv_.size(); ++pi) {
            const int p = plo_ + static_cast<int>(pi);
            if (p % 2 == 0) continue;
            for (auto& m : dv_[pi]) m = Mat<K>(-m);
        }
        return DoubleCplx(std::move(f), plo_, qlo_, std::move(dims_), std::move(dh_),
                          std::move(dv_));
    }

    DoubleCplx transposed() const {
        const int np = qhi() - qlo + 1, nq = phi() - plo + 1;
        std::vector<std::vector<Index>> td(static_cast<std::size_t>(np));
        std::vector<std::vector<Mat<K>>> tdh(static_cast<std::size_t>(np));
        std::vector<std::vector<Mat<K>>> tdv(static_cast<std::size_t>(np));
        for (int q = qlo; q <= qhi(); ++q) {
            auto& row = td[static_cast<std::size_t>(q - qlo)];
            auto& rdh = tdh[static_cast<std::size_t>(q - qlo)];
            auto& rdv = tdv[static_cast<std::size_t>(q - qlo)];
            for (int p = plo; p <= phi(); ++p) {
                row.push_back(dim(p, q));
                if (q < qhi()) rdh.push_back(dv_at(p, q));
                if (p < phi()) rdv.push_back(dh_at(p, q));
            }
        }
        return DoubleCplx(field, qlo, plo, std::move(td), std::move(tdh), std::move(tdv));
    }

    void validate() const {
        const int np = static_cast<int>(dims.size());
        for (const auto& col : dims)
            if (static_cast<int>(col.size()) != (np ? static_cast<int>(dims[0].size()) : 0))
                throw FieldError("double complex: ragged dims grid");
        for (int p = plo; p <= phi(); ++p) {
            for (int q = qlo; q <= qhi(); ++q) {
                if (dh_at(p, q).rows() != dim(p + 1, q) || dh_at(p, q).cols() != dim(p, q))
                    throw FieldError("double complex: horizontal shape mismatch");
                if (dv_at(p, q).rows() != dim(p, q + 1) || dv_at(p, q).cols() != dim(p, q))
                    throw FieldError("double complex: vertical shape mismatch");
                if (!is_zero_mat<K>(Mat<K>(dh_at(p + 1, q) * dh_at(p, q))))
                    throw FieldError("double complex: dh o dh != 0");
                if (!is_zero_mat<K>(Mat<K>(dv_at(p, q + 1) * dv_at(p, q))))
                    throw FieldError("double complex: dv o dv != 0");
                if (!is_zero_mat<K>(
                        Mat<K>(dh_at(p, q + 1) * dv_at(p, q) + dv_at(p + 1, q) * dh_at(p, q))))
                    throw FieldError("double complex: dh dv + dv dh != 0");
            }
        }
    }
};

// Tot^n = (+)_{p+q=n} (p ascending), differential dh + dv.
template <field_scalar K>
Cplx<K> total_complex(const DoubleCplx<K>& dc) {
    const int nlo = dc.plo + dc.qlo, nhi = dc.phi() + dc.qhi();
    Cplx<K> tot(dc.field);
    if (nhi < nlo) return tot;
    tot.lo = nlo;

    auto block_offset = [&](int n, int p) {
        Index off = 0;
        for (int pp = dc.plo; pp < p; ++pp) off += dc.dim(pp, n - pp);
        return off;
    };
    auto total_dim = [&](int n) {
        Index d = 0;
        for (int p = dc.plo; p <= dc.phi(); ++p) d += dc.dim(p, n - p);
        return d;
    };

    for (int n = nlo; n <= nhi; ++n) tot.dims.push_back(total_dim(n));
    for (int n = nlo; n < nhi; ++n) {
        Mat<K> d = zeros<K>(dc.field, total_dim(n + 1), total_dim(n));
        for (int p = dc.plo; p <= dc.phi(); ++p) {
            const int q = n - p;
            if (dc.dim(p, q) == 0) continue;
            const Index src = block_offset(n, p);
            if (dc.dim(p + 1, q) > 0)
                d.block(block_offset(n + 1, p + 1), src, dc.dim(p + 1, q), dc.dim(p, q)) =
                    dc.dh_at(p, q);
            if (dc.dim(p, q + 1) > 0)
                d.block(block_offset(n + 1, p), src, dc.dim(p, q + 1), dc.dim(p, q)) =
                    dc.dv_at(p, q);
        }
        tot.diffs.push_back(std::move(d));
    }
    tot.validate();
    return tot;
}

enum class Filtration { columns, rows };

struct SpectralPage {
    int r = 1;
    int plo = 0, qlo = 0;
    std::vector<std::vector<Index>> dims;     // E_r^{p,q}
    std::vector<std::vector<Index>> d_ranks;  // rank of d_r out of (p,q)

    Index dim_at(int p, int q) const {
        const int pi = p - plo, qi = q - qlo;
        if (pi < 0 || qi < 0 || pi >= static_cast<int>(dims.size()) ||
            qi >= static_cast<int>(dims[0].size()))
            return 0;
        return dims[static_cast<std::size_t>(pi)][static_cast<std::size_t>(qi)];
    }
    Index rank_at(int p, int q) const {
        const int pi = p - plo, qi = q - qlo;
        if (pi < 0 || qi < 0 || pi >= static_cast<int>(d_ranks.size()) ||
            qi >= static_cast<int>(d_ranks[0].size()))
            return 0;
        return d_ranks[static_cast<std::size_t>(pi)][static_cast<std::size_t>(qi)];
    }
};

namespace detail {

// spanning-set machinery for the column filtration; spans are memoised since
// the page loop revisits them across r
template <field_scalar K>
struct FilteredTotal {
    const DoubleCplx<K>& dc;
    Cplx<K> tot;
    mutable std::map<std::tuple<int, int, int>, Mat<K>> z_memo;
    mutable std::map<std::tuple<int, int, int>, std::pair<Mat<K>, Index>> den_memo;

    explicit FilteredTotal(const DoubleCplx<K>& d) : dc(d), tot(total_complex(d)) {}

    Index offset(int n, int p) const {
        Index off = 0;
        for (int pp = dc.plo; pp < p; ++pp) off += dc.dim(pp, n - pp);
        return off;
    }

    // columns of the identity spanning F^p Tot^n
    Mat<K> filtration_span(int p, int n) const {
        const Index total = tot.dim(n);
        const Index lead = std::min(offset(n, p), total);
        Mat<K> m = zeros<K>(dc.field, total, total - lead);
        for (Index j = 0; j < total - lead; ++j) m(lead + j, j) = dc.field.one();
        return m;
    }

    // span of Z_r^{p,q} inside Tot^{p+q}; the columns are independent by
    // construction, so its rank is its column count
    const Mat<K>& z_span(int p, int q, int r) const {
        const auto key = std::make_tuple(p, q, r);
        if (auto it = z_memo.find(key); it != z_memo.end()) return it->second;
        const int n = p + q;
        const Mat<K> incl = filtration_span(p, n);
        // rows of d * incl that must vanish: blocks p .. p+r-1 of Tot^{n+1}
        const Index row_lo = offset(n + 1, p);
        const Index row_hi = offset(n + 1, std::min(p + r, dc.phi() + 1));
        if (row_hi <= row_lo) return z_memo.emplace(key, incl).first->second;
        const Mat<K> d_incl = tot.diff(n) * incl;
        const Mat<K> constr = d_incl.middleRows(row_lo, row_hi - row_lo);
        const RankProfile<K> rp = rank_profile<K>(dc.field, constr);
        return z_memo.emplace(key, Mat<K>(incl * rp.kernel_basis)).first->second;
    }

    // span and rank of Z_{r-1}^{p+1,q-1} + B_{r-1}^{p,q} inside Tot^{p+q}
    const std::pair<Mat<K>, Index>& denom(int p, int q, int r) const {
        const auto key = std::make_tuple(p, q, r);
        if (auto it = den_memo.find(key); it != den_memo.end()) return it->second;
        const Mat<K>& z_prev = z_span(p + 1, q - 1, r - 1);
        const Mat<K>& b_src = z_span(p - r + 1, q + r - 2, r - 1);
        Mat<K> span = hstack<K>(z_prev, Mat<K>(tot.diff(p + q - 1) * b_src));
        const Index rank = rank_of<K>(dc.field, span);
        return den_memo.emplace(key, std::make_pair(std::move(span), rank)).first->second;
    }
};

}  // namespace detail

template <field_scalar K>
std::vector<SpectralPage> ss_pages(const DoubleCplx<K>& input, Filtration f, int r_max) {
    if (r_max < 1) return {};
    const DoubleCplx<K> dc = (f == Filtration::columns) ? input : input.transposed();
    const detail::FilteredTotal<K> ft(dc);
    const auto& F = dc.field;

    std::vector<SpectralPage> pages;
    for (int r = 1; r <= r_max; ++r) {
        SpectralPage page;
        page.r = r;
        page.plo = dc.plo;
        page.qlo = dc.qlo;
        for (int p = dc.plo; p <= dc.phi(); ++p) {
            std::vector<Index> drow, rrow;
            for (int q = dc.qlo; q <= dc.qhi(); ++q) {
                const Mat<K>& z = ft.z_span(p, q, r);
                const auto& den = ft.denom(p, q, r);
                const Index dim_e = z.cols() - den.second;
                // rank of d_r out of (p,q): image of d z against the target denominator
                const Mat<K> dz = ft.tot.diff(p + q) * z;
                const auto& den_tgt = ft.denom(p + r, q - r + 1, r);
                const Index drank =
                    rank_of<K>(F, hstack<K>(dz, den_tgt.first)) - den_tgt.second;
                drow.push_back(dim_e);
                rrow.push_back(drank);
            }
            page.dims.push_back(std::move(drow));
            page.d_ranks.push_back(std::move(rrow));
        }
        // consistency with the previous page: E_{r} = ker/im of d_{r-1}
        if (!pages.empty()) {
            const SpectralPage& prev = pages.back();
            for (int p = dc.plo; p <= dc.phi(); ++p)
                for (int q = dc.qlo; q <= dc.qhi(); ++q) {
                    const Index expect = prev.dim_at(p, q) - prev.rank_at(p, q) -
                                         prev.rank_at(p - prev.r, q + prev.r - 1);
                    if (page.dim_at(p, q) != expect)
                        throw FieldError("spectral page bookkeeping violated");
                }
        }
        pages.push_back(std::move(page));
    }
    return pages;
}

template <field_scalar K>
int ss_stabilisation_page(const DoubleCplx<K>& dc) {
    const int width = dc.phi() - dc.plo + 1, height = dc.qhi() - dc.qlo + 1;
    return std::max(width, height) + 1;
}

// stationary page E_inf, computed past the diameter
template <field_scalar K>
SpectralPage ss_infinity(const DoubleCplx<K>& dc, Filtration f) {
    const int r = ss_stabilisation_page(dc);
    auto pages = ss_pages(dc, f, r);
    return pages.back();
}

// sum of E_inf antidiagonals against total cohomology, in every degree
template <field_scalar K>
bool convergence_check(const DoubleCplx<K>& dc, Filtration f) {
    const SpectralPage einf = ss_infinity(dc, f);
    const DoubleCplx<K> oriented = (f == Filtration::columns) ? dc : dc.transposed();
    const auto tot_h = cohomology(total_complex(oriented));
    for (int n = oriented.plo + oriented.qlo; n <= oriented.phi() + oriented.qhi(); ++n) {
        Index sum = 0;
        for (int p = oriented.plo; p <= oriented.phi(); ++p) sum += einf.dim_at(p, n - p);
        if (sum != tot_h.h_at(n)) return false;
    }
    return true;
}

}  // namespace exhom
