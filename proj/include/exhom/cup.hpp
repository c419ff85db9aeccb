#pragma once

// Cochain-level cup products on Koszul cohomology via the exterior shuffle
// formula, extensions built from 1-cocycles, connecting homomorphisms of the
// resulting short exact sequences, the comparison of the two, and the pairing
// between first analytic classes and non-analytic directions.
//
// Shuffle convention: (a u b)_S = sum over splittings S = S1 (+) S2 with
// |S1| = deg a of (-1)^{#{(i,j) in S1 x S2 : i > j}} a_{S1} b_{S2}.  With the
// Koszul signs used here this satisfies the graded Leibniz rule on the nose,
// and the cup against the connecting homomorphism needs no extra sign (the
// global sign between the two is +1, fixed on the degree-(1,0) case and
// asserted uniformly).

#include "exhom/koszul.hpp"

namespace exhom {

template <field_scalar K>
struct CohClass {
    Cplx<K> host;
    int degree = 0;
    Vec<K> rep;

    CohClass(Cplx<K> host_, int degree_, Vec<K> rep_)
        : host(std::move(host_)), degree(degree_), rep(std::move(rep_)) {
        if (rep.size() != host.dim(degree)) throw FieldError("cohomology class: size mismatch");
        if (!is_zero_mat<K>(Mat<K>(host.diff(degree) * rep)))
            throw FieldError("cohomology class: representative is not a cocycle");
    }
};

namespace detail {

template <field_scalar K>
Index host_unit(const Cplx<K>& host) {
    if (host.dim(0) == 0) throw FieldError("cup: host is not a koszul complex");
    return host.dim(0);
}

}  // namespace detail

// raw shuffle product of two cochains (not necessarily cocycles); exactly one
// of the two sides must take scalar (one-dimensional) values unless both do
template <field_scalar K>
Vec<K> cup_cochain(const typename K::Field& F, int l, Index unit_a, Index unit_b,
                   const Vec<K>& a, int deg_a, const Vec<K>& b, int deg_b) {
    if (unit_a != 1 && unit_b != 1)
        throw FieldError("cup: one factor must have scalar coefficients");
    const Index unit_out = std::max(unit_a, unit_b);
    const detail::SubsetIndex idx(l);
    const int deg = deg_a + deg_b;
    Vec<K> out = zeros<K>(F, static_cast<Index>(binomial(static_cast<unsigned>(l),
                                                         static_cast<unsigned>(deg))) *
                                 unit_out,
                          1);
    if (deg > l) return zeros<K>(F, 0, 1);

    const auto& targets = idx.by_deg[static_cast<std::size_t>(deg)];
    for (Index t = 0; t < static_cast<Index>(targets.size()); ++t) {
        const auto& S = targets[static_cast<std::size_t>(t)];
        // choose the positions of S going to the first factor
        for (const auto& pick : subsets_colex(deg, deg_a)) {
            std::vector<int> s1, s2;
            std::vector<bool> in1(S.size(), false);
            for (int pi : pick) in1[static_cast<std::size_t>(pi)] = true;
            for (std::size_t i = 0; i < S.size(); ++i)
                (in1[i] ? s1 : s2).push_back(S[i]);
            long inv = 0;
            for (int i : s1)
                for (int j : s2) inv += (i > j) ? 1 : 0;
            const K sign = (inv % 2 == 0) ? F.one() : -F.one();
            const Index r1 = idx.rank[static_cast<std::size_t>(deg_a)].at(s1);
            const Index r2 = idx.rank[static_cast<std::size_t>(deg_b)].at(s2);
            if (unit_a == 1) {
                const K scal = a(r1) * sign;
                out.segment(t * unit_out, unit_out) +=
                    b.segment(r2 * unit_b, unit_b) * scal;
            } else {
                const K scal = b(r2) * sign;
                out.segment(t * unit_out, unit_out) +=
                    a.segment(r1 * unit_a, unit_a) * scal;
            }
        }
    }
    return out;
}

// cup product of classes on Koszul hosts over the same operator family; the
// second host is the scalar-coefficient one in the intended pairing
template <field_scalar K>
CohClass<K> cup_product(const CohClass<K>& alpha, const CohClass<K>& beta) {
    const auto& F = alpha.host.field;
    if (!(F == beta.host.field)) throw FieldError("cup: field mismatch");
    const int l = alpha.host.hi();
    if (l != beta.host.hi())
        throw FieldError("cup: hosts are koszul complexes of different operator subsets");
    const Index ua = detail::host_unit(alpha.host), ub = detail::host_unit(beta.host);
    Vec<K> prod = cup_cochain<K>(F, l, ua, ub, alpha.rep, alpha.degree, beta.rep, beta.degree);
    const Cplx<K>& host = (ub == 1 && ua != 1) ? alpha.host : ((ua == 1 && ub != 1) ? beta.host : alpha.host);
    return CohClass<K>(host, alpha.degree + beta.degree, std::move(prod));
}

// ---------------------------------------------------------------------------
// Extensions of the trivial module by M from 1-cocycles, the connecting
// homomorphism of the associated short exact sequence of Koszul complexes,
// and the equality of the two routes.

template <field_scalar K>
OperatorModule<K> extension_from_cocycle(const OperatorModule<K>& m, const Vec<K>& xi) {
    const int l = m.op_count();
    if (xi.size() != static_cast<Index>(l) * m.dim)
        throw FieldError("extension: cocycle must have one module entry per operator");
    // cocycle condition x_i xi_j = x_j xi_i
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            const Vec<K> lhs = m.ops[static_cast<std::size_t>(i)] * xi.segment(j * m.dim, m.dim);
            const Vec<K> rhs = m.ops[static_cast<std::size_t>(j)] * xi.segment(i * m.dim, m.dim);
            if (!is_zero_mat<K>(Mat<K>(lhs - rhs)))
                throw FieldError("extension: input violates the cocycle condition");
        }
    std::vector<Mat<K>> ops;
    for (int i = 0; i < l; ++i) {
        Mat<K> y = zeros<K>(m.field, m.dim + 1, m.dim + 1);
        y.topLeftCorner(m.dim, m.dim) = m.ops[static_cast<std::size_t>(i)];
        y.block(0, m.dim, m.dim, 1) = xi.segment(i * m.dim, m.dim);
        ops.push_back(std::move(y));
    }
    return OperatorModule<K>(m.field, m.dim + 1, std::move(ops), m.labels);
}

// connecting homomorphism H^n(triv) -> H^{n+1}(M) of
// 0 -> K(M) -> K(E) -> K(triv) -> 0, computed through the evident splitting
template <field_scalar K>
CohClass<K> connecting_map(const OperatorModule<K>& m, const OperatorModule<K>& ext,
                           const CohClass<K>& v) {
    if (ext.dim != m.dim + 1) throw FieldError("connecting map: not an extension of the line");
    const int l = m.op_count();
    const auto subset = index_range(l);
    const Cplx<K> ke = koszul_cochain(ext, subset);
    const Cplx<K> km = koszul_cochain(m, subset);
    const int n = v.degree;
    const Index copies_n = v.rep.size();  // binom(l, n)

    // lift through the vector-space splitting: (0_M, v_S) per subset block
    Vec<K> lift = zeros<K>(m.field, ke.dim(n), 1);
    for (Index s = 0; s < copies_n; ++s) lift(s * (m.dim + 1) + m.dim) = v.rep(s);
    const Vec<K> dlift = ke.diff(n) * lift;

    const Index copies_n1 = ke.dim(n + 1) / (m.dim + 1);
    Vec<K> out = zeros<K>(m.field, copies_n1 * m.dim, 1);
    for (Index s = 0; s < copies_n1; ++s) {
        out.segment(s * m.dim, m.dim) = dlift.segment(s * (m.dim + 1), m.dim);
        if (!dlift(s * (m.dim + 1) + m.dim).is_zero())
            throw FieldError("connecting map: boundary left the submodule complex");
    }
    return CohClass<K>(km, n + 1, std::move(out));
}

// xi u v against delta(v) in the cohomology basis; the documented global sign
// between the two routes is +1
template <field_scalar K>
bool cup_equals_delta_check(const OperatorModule<K>& m, const CohClass<K>& xi,
                            const CohClass<K>& v) {
    if (xi.degree != 1) throw FieldError("cup-delta: xi must have degree 1");
    const OperatorModule<K> ext = extension_from_cocycle(m, xi.rep);
    const CohClass<K> delta_v = connecting_map(m, ext, v);
    const CohClass<K> cup_v = cup_product(xi, v);
    const CohData<K> coh = cohomology(xi.host);
    const Vec<K> a = coh.coords(delta_v.degree, delta_v.rep);
    const Vec<K> b = coh.coords(cup_v.degree, cup_v.rep);
    return mat_eq<K>(Mat<K>(a), Mat<K>(b));
}

// ---------------------------------------------------------------------------
// Pairing H^1_an(M) x H^1_cts(triv)/H^1_an(triv) -> H^2_cts(M).

template <field_scalar K>
struct PairingReport {
    int d = 1;
    Index h1_an = 0;   // dim H^1 of the analytic complex of M
    Index h2_an = 0;
    Index h0 = 0;      // dim H^0(M)
    bool les_exact = true;            // cone LES machinery on K(M) -> K(E)
    bool image_dies = true;           // im(H^1(E) -> H^1(triv)) = ker(delta_xi), ranks matched
    bool analytic_factors = true;     // delta_xi(H^1_an(triv)) inside the image of H^2_an(M)
    bool verbatim_hypotheses = false; // H^0(M) = 0 and H^2_an(M) = 0
    bool verbatim_kernel_identity = true;  // under the hypotheses: ker = H^1_an(triv)
    Mat<K> pairing_matrix;                 // H^2_cts coords x (h1_an * (d-1))
    Index pairing_rank = 0;
    Index reduced_rank = 0;  // into H^2_cts / image of H^2_an
};

template <field_scalar K>
PairingReport<K> pairing_report(const OperatorModule<K>& m) {
    const int d = m.op_count() - 1;
    if (d < 2) throw FieldError("pairing: needs at least two derivations");
    for (int i = 2; i <= d; ++i)
        if (!is_zero_mat<K>(m.ops[static_cast<std::size_t>(i)]))
            throw FieldError("pairing: instance is not analytic");
    const auto& F = m.field;
    const auto all = index_range(d + 1);

    const Cplx<K> km = koszul_cochain(m, all);
    const CohData<K> coh_m = cohomology(km);
    const Cplx<K> kan = koszul_cochain(m, {0, 1});
    const CohData<K> coh_an = cohomology(kan);
    const OperatorModule<K> triv = trivial_module<K>(F, m.labels);
    const Cplx<K> kt = koszul_cochain(triv, all);

    PairingReport<K> rep;
    rep.d = d;
    rep.h1_an = coh_an.h_at(1);
    rep.h2_an = coh_an.h_at(2);
    rep.h0 = coh_an.h_at(0);
    rep.verbatim_hypotheses = rep.h0 == 0 && rep.h2_an == 0;

    // image of H^2_an(M) inside H^2_cts(M), via extension by zero on the
    // subset {0,1} block (a chain map because the flagged operators vanish)
    const detail::SubsetIndex idx(d + 1);
    const Index pos01 = idx.rank[2].at(std::vector<int>{0, 1});
    Mat<K> h2an_in_cts = zeros<K>(F, coh_m.h_at(2), rep.h2_an);
    for (Index b = 0; b < rep.h2_an; ++b) {
        Vec<K> z = zeros<K>(F, km.dim(2), 1);
        z.segment(pos01 * m.dim, m.dim) = coh_an.reps_at(2).col(b);
        h2an_in_cts.col(b) = coh_m.coords(2, z);
    }

    rep.pairing_matrix = zeros<K>(F, coh_m.h_at(2), rep.h1_an * (d - 1));

    for (Index a = 0; a < rep.h1_an; ++a) {
        // analytic 1-cocycle extended by zero to the full family
        Vec<K> xi = zeros<K>(F, km.dim(1), 1);
        xi.segment(0, 2 * m.dim) = coh_an.reps_at(1).col(a);
        const CohClass<K> xi_cls(km, 1, xi);
        const OperatorModule<K> ext = extension_from_cocycle(m, xi);

        // delta_xi on all of H^1_cts(triv) (every triv cochain is a cocycle)
        Mat<K> delta = zeros<K>(F, coh_m.h_at(2), kt.dim(1));
        for (Index b = 0; b < kt.dim(1); ++b) {
            Vec<K> v = zeros<K>(F, kt.dim(1), 1);
            v(b) = F.one();
            const CohClass<K> vc(kt, 1, v);
            delta.col(b) = coh_m.coords(2, connecting_map(m, ext, vc).rep);
        }

        // mechanism (a): the LES of the extension
        const Cplx<K> ke = koszul_cochain(ext, all);
        const ChainMap<K> incl =
            induced_koszul_map<K>(km, ke, [&] {
                Mat<K> i0 = zeros<K>(F, m.dim + 1, m.dim);
                i0.topRows(m.dim) = eye<K>(F, m.dim);
                return i0;
            }());
        if (!cone_les_check(incl)) rep.les_exact = false;

        const ChainMap<K> proj =
            induced_koszul_map<K>(ke, kt, [&] {
                Mat<K> p0 = zeros<K>(F, 1, m.dim + 1);
                p0(0, m.dim) = F.one();
                return p0;
            }());
        const CohData<K> coh_e = cohomology(ke);
        const CohData<K> coh_t = cohomology(kt);
        const Mat<K> pi_star = induced_map<K>(coh_e, coh_t, proj, 1);
        // classes from E die under delta, and ranks match kernel exactly
        if (!is_zero_mat<K>(Mat<K>(delta * pi_star))) rep.image_dies = false;
        if (rank_of<K>(F, pi_star) + rank_of<K>(F, delta) != kt.dim(1)) rep.image_dies = false;

        // mechanism (b): on analytic directions delta factors through H^2_an
        for (Index b = 0; b < 2; ++b) {
            const Vec<K> img = delta.col(b);
            if (!solve_linear<K>(F, h2an_in_cts, Mat<K>(img))) rep.analytic_factors = false;
        }

        // the pairing columns: non-analytic directions j = 2..d
        for (int j = 2; j <= d; ++j)
            rep.pairing_matrix.col(a * (d - 1) + (j - 2)) = delta.col(j);

        if (rep.verbatim_hypotheses) {
            // kernel of delta_xi must be exactly the analytic subspace
            const RankProfile<K> ker = rank_profile<K>(F, delta);
            Mat<K> an_span = zeros<K>(F, kt.dim(1), 2);
            an_span(0, 0) = F.one();
            an_span(1, 1) = F.one();
            if (rank_of<K>(F, hstack<K>(ker.kernel_basis, an_span)) != ker.kernel_basis.cols() ||
                ker.kernel_basis.cols() != 2)
                rep.verbatim_kernel_identity = false;
        }
    }

    rep.pairing_rank = rank_of<K>(F, rep.pairing_matrix);
    rep.reduced_rank = rank_of<K>(F, hstack<K>(rep.pairing_matrix, h2an_in_cts)) -
                       rank_of<K>(F, h2an_in_cts);
    return rep;
}

}  // namespace exhom
