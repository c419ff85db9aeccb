#pragma once

// Bounded cochain complexes over an exact field, chain maps, and the cone /
// shift / sum calculus together with cohomology and quasi-isomorphism tests.
//
// Conventions, fixed once for the whole library:
//   * shift(c, s) has term c^{q+s} in degree q and differential (-1)^s d.
//   * cone(f: A->B) has degree-q term A^{q+1} (+) B^q and differential
//     (a, b) |-> (-d_A a, f a + d_B b).
//   * fibre(f: A->B) has degree-q term A^q (+) B^{q-1} and differential
//     (a, b) |-> (d_A a, f a - d_B b); it is isomorphic to cone(f)[-1] via
//     (a, b) |-> (a, -b).

#include <algorithm>
#include <optional>
#include <vector>

#include "exhom/linalg.hpp"

namespace exhom {

template <field_scalar K>
struct Cplx {
    using F = typename K::Field;

    F field;
    int lo = 0;
    std::vector<Index> dims;    // dims[i] lives in degree lo + i
    std::vector<Mat<K>> diffs;  // diffs[i]: degree lo+i -> lo+i+1

    explicit Cplx(F f) : field(std::move(f)) {}
    Cplx(F f, int lo_, std::vector<Index> dims_, std::vector<Mat<K>> diffs_)
        : field(std::move(f)), lo(lo_), dims(std::move(dims_)), diffs(std::move(diffs_)) {
        validate();
    }

    static Cplx concentrated(F f, int degree, Index dim) {
        return Cplx(std::move(f), degree, {dim}, {});
    }

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }

    Index dim(int q) const {
        if (q < lo || q > hi()) return 0;
        return dims[static_cast<std::size_t>(q - lo)];
    }

    Mat<K> diff(int q) const {
        const int i = q - lo;
        if (i >= 0 && i + 1 < static_cast<int>(dims.size()))
            return diffs[static_cast<std::size_t>(i)];
        return zeros<K>(field, dim(q + 1), dim(q));
    }

    Index total_dim() const {
        Index t = 0;
        for (Index d : dims) t += d;
        return t;
    }

    void validate() const {
        if (dims.empty()) {
            if (!diffs.empty()) throw FieldError("complex: dangling differentials");
            return;
        }
        if (diffs.size() + 1 != dims.size())
            throw FieldError("complex: need exactly one differential per adjacent pair");
        for (std::size_t i = 0; i < diffs.size(); ++i) {
            if (diffs[i].rows() != dims[i + 1] || diffs[i].cols() != dims[i])
                throw FieldError("complex: differential shape mismatch");
            check_field<K>(field, diffs[i]);
        }
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
            if (!is_zero_mat<K>(Mat<K>(diffs[i + 1] * diffs[i])))
                throw FieldError("complex: d o d != 0");
    }
};

// Degreewise equality on the union of the supports.
template <field_scalar K>
bool cplx_eq(const Cplx<K>& a, const Cplx<K>& b) {
    if (!(a.field == b.field)) return false;
    const int lo = std::min(a.lo, b.lo), hi = std::max(a.hi(), b.hi());
    for (int q = lo; q <= hi; ++q) {
        if (a.dim(q) != b.dim(q)) return false;
        if (!mat_eq<K>(a.diff(q), b.diff(q))) return false;
    }
    return true;
}

template <field_scalar K>
struct ChainMap {
    Cplx<K> src, tgt;
    int lo = 0;
    std::vector<Mat<K>> maps;  // maps[i]: src^{lo+i} -> tgt^{lo+i}

    ChainMap(Cplx<K> s, Cplx<K> t, int lo_, std::vector<Mat<K>> maps_)
        : src(std::move(s)), tgt(std::move(t)), lo(lo_), maps(std::move(maps_)) {
        validate();
    }

    Mat<K> map(int q) const {
        const int i = q - lo;
        if (i >= 0 && i < static_cast<int>(maps.size())) return maps[static_cast<std::size_t>(i)];
        return zeros<K>(src.field, tgt.dim(q), src.dim(q));
    }

    void validate() const {
        if (!(src.field == tgt.field)) throw FieldError("chain map: field mismatch");
        for (std::size_t i = 0; i < maps.size(); ++i) {
            const int q = lo + static_cast<int>(i);
            if (maps[i].rows() != tgt.dim(q) || maps[i].cols() != src.dim(q))
                throw FieldError("chain map: component shape mismatch");
            check_field<K>(src.field, maps[i]);
        }
        const int qlo = std::min(src.lo, tgt.lo) - 1;
        const int qhi = std::max(src.hi(), tgt.hi()) + 1;
        for (int q = qlo; q <= qhi; ++q) {
            if (!mat_eq<K>(Mat<K>(map(q + 1) * src.diff(q)), Mat<K>(tgt.diff(q) * map(q))))
                throw FieldError("chain map: square does not commute at degree " +
                                 std::to_string(q));
        }
    }
};

// identity chain map
template <field_scalar K>
ChainMap<K> id_map(const Cplx<K>& c) {
    std::vector<Mat<K>> maps;
    for (int q = c.lo; q <= c.hi(); ++q) maps.push_back(eye<K>(c.field, c.dim(q)));
    return ChainMap<K>(c, c, c.lo, std::move(maps));
}

template <field_scalar K>
ChainMap<K> zero_map(const Cplx<K>& src, const Cplx<K>& tgt) {
    return ChainMap<K>(src, tgt, 0, {});
}

// ---------------------------------------------------------------------------
// shift / cone / fibre / direct sum

template <field_scalar K>
Cplx<K> shift(const Cplx<K>& c, int s) {
    Cplx<K> r(c.field);
    r.lo = c.lo - s;
    r.dims = c.dims;
    r.diffs = c.diffs;
    if (s % 2 != 0)
        for (auto& d : r.diffs) d = Mat<K>(-d);
    return r;
}

namespace detail {
template <field_scalar K>
Mat<K> block2x2(const typename K::Field& F, const Mat<K>& a, const Mat<K>& b, const Mat<K>& c,
                const Mat<K>& d) {
    Mat<K> m = zeros<K>(F, a.rows() + c.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.topRightCorner(b.rows(), b.cols()) = b;
    m.bottomLeftCorner(c.rows(), c.cols()) = c;
    m.bottomRightCorner(d.rows(), d.cols()) = d;
    return m;
}
}  // namespace detail

template <field_scalar K>
Cplx<K> cone(const ChainMap<K>& f) {
    const auto& A = f.src;
    const auto& B = f.tgt;
    const int lo = std::min(A.lo - 1, B.lo), hi = std::max(A.hi() - 1, B.hi());
    Cplx<K> r(A.field);
    if (hi < lo) return r;
    r.lo = lo;
    for (int q = lo; q <= hi; ++q) r.dims.push_back(A.dim(q + 1) + B.dim(q));
    for (int q = lo; q < hi; ++q) {
        r.diffs.push_back(detail::block2x2<K>(
            A.field, Mat<K>(-A.diff(q + 1)), zeros<K>(A.field, A.dim(q + 2), B.dim(q)),
            f.map(q + 1), B.diff(q)));
    }
    r.validate();
    return r;
}

template <field_scalar K>
Cplx<K> fibre(const ChainMap<K>& f) {
    const auto& A = f.src;
    const auto& B = f.tgt;
    const int lo = std::min(A.lo, B.lo + 1), hi = std::max(A.hi(), B.hi() + 1);
    Cplx<K> r(A.field);
    if (hi < lo) return r;
    r.lo = lo;
    for (int q = lo; q <= hi; ++q) r.dims.push_back(A.dim(q) + B.dim(q - 1));
    for (int q = lo; q < hi; ++q) {
        r.diffs.push_back(detail::block2x2<K>(
            A.field, A.diff(q), zeros<K>(A.field, A.dim(q + 1), B.dim(q - 1)), f.map(q),
            Mat<K>(-B.diff(q - 1))));
    }
    r.validate();
    return r;
}

// cone together with the maps of its defining triangle
//   B --incl--> cone(f) --proj--> A[1]
template <field_scalar K>
struct ConeTriangle {
    Cplx<K> cone;
    ChainMap<K> incl;  // tgt -> cone
    ChainMap<K> proj;  // cone -> shift(src, 1)
};

template <field_scalar K>
ConeTriangle<K> cone_triangle(const ChainMap<K>& f) {
    Cplx<K> c = cone(f);
    const auto& A = f.src;
    const auto& B = f.tgt;
    std::vector<Mat<K>> incl_maps, proj_maps;
    for (int q = c.lo; q <= c.hi(); ++q) {
        Mat<K> in = zeros<K>(A.field, c.dim(q), B.dim(q));
        in.bottomRows(B.dim(q)) = eye<K>(A.field, B.dim(q));
        incl_maps.push_back(std::move(in));
        Mat<K> pr = zeros<K>(A.field, A.dim(q + 1), c.dim(q));
        pr.leftCols(A.dim(q + 1)) = eye<K>(A.field, A.dim(q + 1));
        proj_maps.push_back(std::move(pr));
    }
    Cplx<K> a1 = shift(A, 1);
    ChainMap<K> incl(B, c, c.lo, std::move(incl_maps));
    ChainMap<K> proj(c, std::move(a1), c.lo, std::move(proj_maps));
    return {std::move(c), std::move(incl), std::move(proj)};
}

template <field_scalar K>
Cplx<K> direct_sum(const std::vector<Cplx<K>>& cs) {
    if (cs.empty()) throw FieldError("direct_sum: need at least one summand (or a field)");
    for (const auto& c : cs)
        if (!(c.field == cs.front().field)) throw FieldError("direct_sum: field mismatch");
    int lo = cs.front().lo, hi = cs.front().hi();
    for (const auto& c : cs) {
        if (c.dims.empty()) continue;
        lo = std::min(lo, c.lo);
        hi = std::max(hi, c.hi());
    }
    Cplx<K> r(cs.front().field);
    if (hi < lo) return r;
    r.lo = lo;
    for (int q = lo; q <= hi; ++q) {
        Index d = 0;
        for (const auto& c : cs) d += c.dim(q);
        r.dims.push_back(d);
    }
    for (int q = lo; q < hi; ++q) {
        std::vector<Mat<K>> blocks;
        for (const auto& c : cs) blocks.push_back(c.diff(q));
        r.diffs.push_back(block_diag<K>(r.field, blocks));
    }
    r.validate();
    return r;
}

template <field_scalar K>
Cplx<K> direct_sum(const typename K::Field& F, const std::vector<Cplx<K>>& cs) {
    if (cs.empty()) return Cplx<K>(F);
    return direct_sum(cs);
}

// ---------------------------------------------------------------------------
// Cohomology.

template <field_scalar K>
struct CohData {
    Cplx<K> cplx;
    std::vector<Index> h;       // per degree cplx.lo .. cplx.hi()
    std::vector<Mat<K>> reps;   // dim(q) x h(q): representative cocycles
    std::vector<Mat<K>> bnd;    // dim(q) x rank d^{q-1}: coboundary basis
    std::vector<Mat<K>> ker;    // kernel basis of d^q

    Index h_at(int q) const {
        if (q < cplx.lo || q > cplx.hi()) return 0;
        return h[static_cast<std::size_t>(q - cplx.lo)];
    }
    const Mat<K>& reps_at(int q) const { return reps[static_cast<std::size_t>(q - cplx.lo)]; }
    const Mat<K>& bnd_at(int q) const { return bnd[static_cast<std::size_t>(q - cplx.lo)]; }

    std::vector<Index> dims_vector() const { return h; }

    // Coordinates of a cocycle's class in the representative basis.
    Vec<K> coords(int q, const Vec<K>& z) const {
        const auto& F = cplx.field;
        if (z.size() != cplx.dim(q)) throw FieldError("coords: wrong degree size");
        if (!is_zero_mat<K>(Mat<K>(cplx.diff(q) * z))) throw FieldError("coords: not a cocycle");
        if (q < cplx.lo || q > cplx.hi()) return zeros<K>(F, 0, 1);
        Mat<K> basis = hstack<K>(bnd_at(q), reps_at(q));
        const auto sol = solve_linear<K>(F, basis, Mat<K>(z));
        if (!sol) throw FieldError("coords: cocycle outside kernel span");
        return sol->bottomRows(h_at(q));
    }

    bool class_is_zero(int q, const Vec<K>& z) const {
        return is_zero_mat<K>(Mat<K>(coords(q, z)));
    }
};

template <field_scalar K>
CohData<K> cohomology(const Cplx<K>& c) {
    CohData<K> out{c, {}, {}, {}, {}};
    const auto& F = c.field;
    for (int q = c.lo; q <= c.hi(); ++q) {
        const RankProfile<K> below = rank_profile<K>(F, c.diff(q - 1));
        const RankProfile<K> here = rank_profile<K>(F, c.diff(q));
        Mat<K> B = below.image_basis;  // inside C^q
        const Mat<K>& Z = here.kernel_basis;
        // choose kernel columns completing the boundary basis
        const RankProfile<K> sel = rank_profile<K>(F, hstack<K>(B, Z));
        Mat<K> reps(c.dim(q), sel.rank - B.cols());
        Index k = 0;
        for (Index pc : sel.pivot_cols)
            if (pc >= B.cols()) reps.col(k++) = Z.col(pc - B.cols());
        out.h.push_back(reps.cols());
        out.reps.push_back(std::move(reps));
        out.bnd.push_back(std::move(B));
        out.ker.push_back(Z);
    }
    return out;
}

template <field_scalar K>
long euler_char(const Cplx<K>& c) {
    const CohData<K> coh = cohomology(c);
    long chi = 0, chi_dims = 0;
    for (int q = c.lo; q <= c.hi(); ++q) {
        const long sign = (q % 2 == 0) ? 1 : -1;
        chi += sign * static_cast<long>(coh.h_at(q));
        chi_dims += sign * static_cast<long>(c.dim(q));
    }
    if (chi != chi_dims)
        throw FieldError("euler_char: cohomology and chain Euler characteristics differ");
    return chi;
}

// ---------------------------------------------------------------------------
// Induced maps on cohomology, quasi-isomorphism, cone long exact sequence.

template <field_scalar K>
Mat<K> induced_map(const CohData<K>& src_coh, const CohData<K>& tgt_coh, const ChainMap<K>& f,
                   int q) {
    const auto& F = f.src.field;
    const Index hs = src_coh.h_at(q), ht = tgt_coh.h_at(q);
    Mat<K> m = zeros<K>(F, ht, hs);
    if (hs == 0 || f.tgt.dim(q) == 0) return m;
    const Mat<K> images = f.map(q) * src_coh.reps_at(q);
    for (Index j = 0; j < hs; ++j) m.col(j) = tgt_coh.coords(q, images.col(j));
    return m;
}

template <field_scalar K>
struct QuasiIsoReport {
    bool is_quasi_iso = true;
    int lo = 0;
    std::vector<Mat<K>> induced;        // per degree, in cohomology bases
    std::vector<Index> ranks;           // rank of each induced map
    std::vector<Index> h_src, h_tgt;
};

template <field_scalar K>
QuasiIsoReport<K> is_quasi_iso(const ChainMap<K>& f) {
    const CohData<K> cs = cohomology(f.src);
    const CohData<K> ct = cohomology(f.tgt);
    QuasiIsoReport<K> rep;
    rep.lo = std::min(f.src.lo, f.tgt.lo);
    const int hi = std::max(f.src.hi(), f.tgt.hi());
    for (int q = rep.lo; q <= hi; ++q) {
        Mat<K> m = induced_map<K>(cs, ct, f, q);
        const Index r = rank_of<K>(f.src.field, m);
        rep.ranks.push_back(r);
        rep.h_src.push_back(cs.h_at(q));
        rep.h_tgt.push_back(ct.h_at(q));
        if (cs.h_at(q) != ct.h_at(q) || r != cs.h_at(q)) rep.is_quasi_iso = false;
        rep.induced.push_back(std::move(m));
    }
    return rep;
}

// A chain map that is an isomorphism in every degree (not merely quasi).
template <field_scalar K>
bool is_degreewise_iso(const ChainMap<K>& f) {
    const int lo = std::min(f.src.lo, f.tgt.lo), hi = std::max(f.src.hi(), f.tgt.hi());
    for (int q = lo; q <= hi; ++q) {
        if (f.src.dim(q) != f.tgt.dim(q)) return false;
        if (rank_of<K>(f.src.field, f.map(q)) != f.src.dim(q)) return false;
    }
    return true;
}

// Exactness of ... -> H^q(A) -> H^q(B) -> H^q(cone f) -> H^{q+1}(A) -> ...
// by rank bookkeeping at every joint.
template <field_scalar K>
bool cone_les_check(const ChainMap<K>& f) {
    const ConeTriangle<K> tri = cone_triangle(f);
    const CohData<K> ca = cohomology(f.src);
    const CohData<K> cb = cohomology(f.tgt);
    const CohData<K> cc = cohomology(tri.cone);
    const CohData<K> ca1 = cohomology(tri.proj.tgt);  // shift(src, 1)
    const auto& F = f.src.field;

    const int lo = tri.cone.lo - 1, hi = tri.cone.hi() + 1;
    for (int q = lo; q <= hi; ++q) {
        const Mat<K> fst = induced_map<K>(ca, cb, f, q);
        const Mat<K> inc = induced_map<K>(cb, cc, tri.incl, q);
        const Mat<K> prj = induced_map<K>(cc, ca1, tri.proj, q);  // H^q(cone)->H^{q+1}(A)
        // connecting into the next f
        const Mat<K> fst_next = induced_map<K>(ca, cb, f, q + 1);

        // exact at H^q(B): rank f* + rank incl* = h^q(B)
        if (rank_of<K>(F, fst) + rank_of<K>(F, inc) != cb.h_at(q)) return false;
        // exact at H^q(cone)
        if (rank_of<K>(F, inc) + rank_of<K>(F, prj) != cc.h_at(q)) return false;
        // exact at H^{q+1}(A): image of proj = kernel of f*_{q+1}
        if (rank_of<K>(F, prj) + rank_of<K>(F, fst_next) != ca.h_at(q + 1)) return false;
    }
    return true;
}

}  // namespace exhom
