#pragma once

// Grassmann-algebra models for the solution-functor story: derivation
// operators on an exterior algebra tensored with a coefficient space, the
// simultaneous-kernel functor, the derived resolution complexes and their
// lead-operator and phi fibres, the four-block differential identity against
// the three-column double complex, and the two spectral sequences attached to
// it.
//
// The derivation matrices are encoded unsigned (e_T -> e_{T\{i}}), which
// makes them commute on the nose; the odd signs are absorbed by the Koszul
// sign convention downstream.

#include "exhom/herr.hpp"
#include "exhom/instance_gen.hpp"

namespace exhom {

// ---------------------------------------------------------------------------
// model constructors

namespace detail {

// unsigned derivation in generator g (0-based) on the 2^gens * w basis
template <field_scalar K>
Mat<K> grassmann_derivative(const typename K::Field& F, int gens, Index w, int g) {
    const Index blocks = Index{1} << gens;
    Mat<K> m = zeros<K>(F, blocks * w, blocks * w);
    for (Index mask = 0; mask < blocks; ++mask) {
        if (!(mask & (Index{1} << g))) continue;
        const Index tgt = mask & ~(Index{1} << g);
        m.block(tgt * w, mask * w, w, w) = eye<K>(F, w);
    }
    return m;
}

}  // namespace detail

// basis of the simultaneous kernel of the operators indexed from `from` on
template <field_scalar K>
Mat<K> sol(const OperatorModule<K>& m, int from = 1) {
    Mat<K> stacked = zeros<K>(m.field, 0, m.dim);
    for (int i = from; i < m.op_count(); ++i)
        stacked = vstack<K>(stacked, m.ops[static_cast<std::size_t>(i)]);
    return rank_profile<K>(m.field, stacked).kernel_basis;
}

// Exterior-algebra model on d-1 generators with w-dimensional coefficients.
// ops[0] is the lead operator, ops[1..d-1] the derivations.  The constructor
// verifies the structural solvability the resolution story rests on: each
// derivation maps the carrier onto its own kernel, the joint kernel has
// dimension w, and the sideways-constrained equations d_sigma z = x are
// solvable whenever x itself satisfies the side constraints.
template <field_scalar K>
OperatorModule<K> grassmann_model(const typename K::Field& F, int d, Index w,
                                  std::optional<Mat<K>> nabla1 = std::nullopt) {
    if (d < 2 || w < 1) throw FieldError("grassmann model: need d >= 2 and w >= 1");
    const int gens = d - 1;
    const Index dim = (Index{1} << gens) * w;

    std::vector<Mat<K>> ops;
    std::vector<std::string> labels;
    ops.push_back(nabla1 ? *nabla1 : zeros<K>(F, dim, dim));
    labels.push_back("nabla1");
    for (int g = 0; g < gens; ++g) {
        ops.push_back(detail::grassmann_derivative<K>(F, gens, w, g));
        labels.push_back("d" + std::to_string(g + 2));
    }
    OperatorModule<K> m(F, dim, std::move(ops), std::move(labels));

    // each derivation surjects onto its kernel
    for (int g = 1; g < m.op_count(); ++g) {
        const auto& D = m.ops[static_cast<std::size_t>(g)];
        const RankProfile<K> rp = rank_profile<K>(F, D);
        if (rp.rank * 2 != dim) throw FieldError("grassmann model: derivation rank defect");
        if (!is_zero_mat<K>(Mat<K>(D * D)))
            throw FieldError("grassmann model: derivation does not square to zero");
        if (rank_of<K>(F, hstack<K>(rp.image_basis, rp.kernel_basis)) != rp.rank)
            throw FieldError("grassmann model: image differs from kernel");
    }
    if (sol(m).cols() != w) throw FieldError("grassmann model: joint kernel has wrong size");

    // solvability with side constraints, by explicit solves: for every sigma
    // and I avoiding sigma, every x killed by I and sigma is d_sigma z for a z
    // killed by I
    for (int sigma = 1; sigma < m.op_count(); ++sigma) {
        const std::vector<int> others = [&] {
            std::vector<int> v;
            for (int i = 1; i < m.op_count(); ++i)
                if (i != sigma) v.push_back(i);
            return v;
        }();
        for (int imask = 0; imask < (1 << others.size()); ++imask) {
            Mat<K> side = zeros<K>(F, 0, dim);
            for (std::size_t t = 0; t < others.size(); ++t)
                if (imask & (1 << t))
                    side = vstack<K>(side, m.ops[static_cast<std::size_t>(others[t])]);
            const Mat<K> xs = rank_profile<K>(
                                  F, vstack<K>(side, m.ops[static_cast<std::size_t>(sigma)]))
                                  .kernel_basis;
            for (Index c = 0; c < xs.cols(); ++c) {
                // [d_sigma; side] z = [x; 0]
                const Mat<K> lhs = vstack<K>(m.ops[static_cast<std::size_t>(sigma)], side);
                Mat<K> rhs = zeros<K>(F, lhs.rows(), 1);
                rhs.topRows(dim) = xs.col(c);
                if (!solve_linear<K>(F, lhs, rhs))
                    throw FieldError("grassmann model: constrained solvability failed");
            }
        }
    }
    return m;
}

// commuting lead operator built from derivation monomials tensored with
// coefficient-space blocks
template <class F>
Mat<typename F::Scalar> random_commuting_lead(const F& field, Rng& rng, int d, Index w) {
    using K = typename F::Scalar;
    const int gens = d - 1;
    const Index blocks = Index{1} << gens;
    Mat<K> out = zeros<K>(field, blocks * w, blocks * w);
    const int terms = 1 + static_cast<int>(rng.below(3));
    for (int t = 0; t < terms; ++t) {
        Mat<K> mono = eye<K>(field, blocks * w);
        const Index mask = static_cast<Index>(rng.below(static_cast<std::uint64_t>(blocks)));
        for (int g = 0; g < gens; ++g)
            if (mask & (Index{1} << g))
                mono = Mat<K>(mono * detail::grassmann_derivative<K>(field, gens, w, g));
        Mat<K> coeff = zeros<K>(field, w, w);
        for (Index j = 0; j < w; ++j)
            for (Index i = 0; i < w; ++i) coeff(i, j) = random_scalar(field, rng);
        out = out + mono * kron<K>(field, eye<K>(field, blocks), coeff);
    }
    return out;
}

// derivation monomials with scalar coefficients: commutes with every
// random_commuting_lead as well, so it can serve as an equivariant phi
template <class F>
Mat<typename F::Scalar> random_central_lead(const F& field, Rng& rng, int d, Index w) {
    using K = typename F::Scalar;
    const int gens = d - 1;
    const Index blocks = Index{1} << gens;
    Mat<K> out = zeros<K>(field, blocks * w, blocks * w);
    const int terms = 1 + static_cast<int>(rng.below(3));
    for (int t = 0; t < terms; ++t) {
        Mat<K> mono = eye<K>(field, blocks * w);
        const Index mask = static_cast<Index>(rng.below(static_cast<std::uint64_t>(blocks)));
        for (int g = 0; g < gens; ++g)
            if (mask & (Index{1} << g))
                mono = Mat<K>(mono * detail::grassmann_derivative<K>(field, gens, w, g));
        out = out + mono * random_scalar(field, rng);
    }
    return out;
}

// the deliberate counterexample: truncated polynomials with the usual
// derivative, whose image is strictly smaller than its kernel's complement
template <field_scalar K>
OperatorModule<K> truncated_poly_model(const typename K::Field& F, Index mdeg) {
    if (mdeg < 2) throw FieldError("truncated model: need length >= 2");
    Mat<K> ddx = zeros<K>(F, mdeg, mdeg);
    for (Index i = 0; i + 1 < mdeg; ++i) ddx(i, i + 1) = F.from_int(static_cast<long>(i + 1));
    return OperatorModule<K>(F, mdeg, {zeros<K>(F, mdeg, mdeg), ddx}, {"nabla1", "d2"});
}

// ---------------------------------------------------------------------------
// resolution complexes

template <field_scalar K>
struct OmegaComplexes {
    Cplx<K> c_sigma0;                  // derivations only
    Cplx<K> c_sigma;                   // lead-operator fibre over c_sigma0
    std::optional<Cplx<K>> c_sigma_phi;  // phi fibre, cross instances only
};

template <field_scalar K>
Cplx<K> omega_sigma0(const OperatorModule<K>& m) {
    return koszul_cochain(m, index_range(m.op_count() - 1, 1));
}

template <field_scalar K>
Cplx<K> omega_sigma(const OperatorModule<K>& m) {
    const Cplx<K> c0 = omega_sigma0(m);
    return fibre(mult_map<K>(c0, m.ops[0]));
}

// the equivariant map induced on the lead-operator fibres
template <field_scalar K>
ChainMap<K> omega_sigma_phi_map(const TwoIntervalModule<K>& t) {
    const Cplx<K> ci0 = omega_sigma0(t.m_I), cj0 = omega_sigma0(t.m_J);
    const Cplx<K> ci = fibre(mult_map<K>(ci0, t.m_I.ops[0]));
    const Cplx<K> cj = fibre(mult_map<K>(cj0, t.m_J.ops[0]));
    const Mat<K> g = t.fibre_map();
    std::vector<Mat<K>> maps;
    for (int q = ci.lo; q <= ci.hi(); ++q) {
        const Index c1 = ci0.dim(q) / t.m_I.dim;
        const Index c2 = ci0.dim(q - 1) / t.m_I.dim;
        maps.push_back(block_diag<K>(
            t.m_I.field, {kron<K>(t.m_I.field, eye<K>(t.m_I.field, c1), g),
                          kron<K>(t.m_I.field, eye<K>(t.m_I.field, c2), g)}));
    }
    return ChainMap<K>(ci, cj, ci.lo, std::move(maps));
}

template <field_scalar K>
OmegaComplexes<K> omega_complexes(const OperatorModule<K>& m) {
    return {omega_sigma0(m), omega_sigma(m), std::nullopt};
}

template <field_scalar K>
OmegaComplexes<K> omega_complexes(const TwoIntervalModule<K>& t) {
    return {omega_sigma0(t.m_I), omega_sigma(t.m_I), fibre(omega_sigma_phi_map(t))};
}

// ---------------------------------------------------------------------------
// the four-block differential identity

namespace detail {

// three-column double complex  C_I -> C_J (+) C_I -> C_J  with maps
// a |-> (phi a, nabla a) and (u, v) |-> nabla u - phi v
template <field_scalar K>
DoubleCplx<K> bigherr_double(const Cplx<K>& ci, const Cplx<K>& cj, const ChainMap<K>& nabla_i,
                             const ChainMap<K>& nabla_j, const ChainMap<K>& phi) {
    const auto& F = ci.field;
    const int qlo = std::min(ci.lo, cj.lo), qhi = std::max(ci.hi(), cj.hi());
    std::vector<std::vector<Index>> dims(3);
    std::vector<std::vector<Mat<K>>> dh(3), dv(3);
    for (int q = qlo; q <= qhi; ++q) {
        dims[0].push_back(ci.dim(q));
        dims[1].push_back(cj.dim(q) + ci.dim(q));
        dims[2].push_back(cj.dim(q));
        if (q < qhi) {
            dv[0].push_back(ci.diff(q));
            dv[1].push_back(block_diag<K>(F, {cj.diff(q), ci.diff(q)}));
            dv[2].push_back(cj.diff(q));
        }
        Mat<K> h0 = zeros<K>(F, cj.dim(q) + ci.dim(q), ci.dim(q));
        h0.topRows(cj.dim(q)) = phi.map(q);
        h0.bottomRows(ci.dim(q)) = nabla_i.map(q);
        dh[0].push_back(std::move(h0));
        Mat<K> h1 = zeros<K>(F, cj.dim(q), cj.dim(q) + ci.dim(q));
        h1.leftCols(cj.dim(q)) = nabla_j.map(q);
        h1.rightCols(ci.dim(q)) = Mat<K>(-phi.map(q));
        dh[1].push_back(std::move(h1));
    }
    return DoubleCplx<K>::from_commuting(F, 0, qlo, std::move(dims), std::move(dh),
                                         std::move(dv));
}

}  // namespace detail

// The iterated fibre of (nabla, phi) over the derivation complex against the
// total complex of the three-column double complex: exhibits the canonical
// block permutation with a single -1 block making the differentials equal.
template <field_scalar K>
bool quad_matrix_check(const TwoIntervalModule<K>& t) {
    const auto& F = t.m_I.field;
    const Cplx<K> ci0 = omega_sigma0(t.m_I), cj0 = omega_sigma0(t.m_J);
    const ChainMap<K> nabla_i = mult_map<K>(ci0, t.m_I.ops[0]);
    const ChainMap<K> nabla_j = mult_map<K>(cj0, t.m_J.ops[0]);
    const ChainMap<K> phi0 = induced_koszul_map<K>(ci0, cj0, t.fibre_map());

    const ChainMap<K> phi_d = omega_sigma_phi_map(t);
    const Cplx<K> iterated = fibre(phi_d);

    const DoubleCplx<K> big = detail::bigherr_double<K>(ci0, cj0, nabla_i, nabla_j, phi0);
    const Cplx<K> tot = total_complex(big);

    // Psi: (a, b, c, e) -> (a; u = c, v = b; w = -e)
    try {
        std::vector<Mat<K>> maps;
        for (int q = iterated.lo; q <= iterated.hi(); ++q) {
            const Index a = ci0.dim(q), b = ci0.dim(q - 1);
            const Index c = cj0.dim(q - 1), e = cj0.dim(q - 2);
            Mat<K> psi = zeros<K>(F, tot.dim(q), iterated.dim(q));
            psi.block(0, 0, a, a) = eye<K>(F, a);                      // a -> col0
            psi.block(a, a + b, c, c) = eye<K>(F, c);                  // c -> u
            psi.block(a + c, a, b, b) = eye<K>(F, b);                  // b -> v
            psi.block(a + c + b, a + b + c, e, e) = Mat<K>(-eye<K>(F, e));  // e -> -w
            maps.push_back(std::move(psi));
        }
        const ChainMap<K> iso(iterated, tot, iterated.lo, std::move(maps));
        return is_degreewise_iso(iso);
    } catch (const FieldError&) {
        return false;
    }
}

// endomorphism form: phi acts on the single module
template <field_scalar K>
bool quad_matrix_check(const OperatorModule<K>& m, const Mat<K>& phi) {
    const TwoIntervalModule<K> t(m, m, phi);
    return quad_matrix_check(t);
}

// ---------------------------------------------------------------------------
// resolution quasi-isomorphism and the two spectral sequences

template <field_scalar K>
struct ResolutionReport {
    bool is_resolution = false;  // Sol[0] -> C_sigma0 a quasi-isomorphism
    std::vector<Index> h_sigma0;
    Index sol_dim = 0;
};

template <field_scalar K>
ResolutionReport<K> dolbeault_resolution_check(const OperatorModule<K>& m) {
    const Cplx<K> c0 = omega_sigma0(m);
    const Mat<K> s = sol(m);
    const Cplx<K> src = Cplx<K>::concentrated(m.field, 0, s.cols());
    const ChainMap<K> incl(src, c0, 0, {s});
    const auto rep = is_quasi_iso(incl);
    return {rep.is_quasi_iso, cohomology(c0).h, s.cols()};
}

template <field_scalar K>
struct FrolicherReport {
    bool first_collapse = false;   // E_2 = E_inf for the lead-operator sequence
    bool omega_identity = false;   // H(omega-Sigma) dims = H(lead on Sol) dims
    std::vector<Index> h_omega, h_sol_lead;
    bool has_phi = false;
    bool second_collapse = false;  // E_2 = E_inf for the phi sequence
    bool phi_identity = false;     // H(phi, omega-Sigma) dims = H(phi, lead on Sol) dims
    std::vector<Index> h_phi_omega, h_sol_phi;
};

namespace detail {

// restriction of an intertwining map to the joint-kernel bases
template <field_scalar K>
Mat<K> restrict_to_sol(const typename K::Field& F, const Mat<K>& map, const Mat<K>& sol_src,
                       const Mat<K>& sol_tgt) {
    const auto r = solve_linear<K>(F, sol_tgt, Mat<K>(map * sol_src));
    if (!r) throw FieldError("restriction: map does not preserve the solution space");
    return *r;
}

}  // namespace detail

template <field_scalar K>
FrolicherReport<K> frolicher_check(const TwoIntervalModule<K>& t) {
    const auto& F = t.m_I.field;
    FrolicherReport<K> rep;
    rep.has_phi = true;

    // first sequence: two columns (C_sigma0, C_sigma0) joined by the lead map
    const Cplx<K> ci0 = omega_sigma0(t.m_I);
    const ChainMap<K> nabla_i = mult_map<K>(ci0, t.m_I.ops[0]);
    {
        std::vector<std::vector<Index>> dims(2);
        std::vector<std::vector<Mat<K>>> dh(2), dv(2);
        for (int q = ci0.lo; q <= ci0.hi(); ++q) {
            dims[0].push_back(ci0.dim(q));
            dims[1].push_back(ci0.dim(q));
            if (q < ci0.hi()) {
                dv[0].push_back(ci0.diff(q));
                dv[1].push_back(ci0.diff(q));
            }
            dh[0].push_back(nabla_i.map(q));
        }
        const DoubleCplx<K> dc = DoubleCplx<K>::from_commuting(F, 0, ci0.lo, std::move(dims),
                                                               std::move(dh), std::move(dv));
        const auto pages = ss_pages(dc, Filtration::columns, ss_stabilisation_page(dc));
        rep.first_collapse = true;
        for (int p = 0; p <= 1; ++p)
            for (int q = ci0.lo; q <= ci0.hi(); ++q)
                if (pages[1].dim_at(p, q) != pages.back().dim_at(p, q))
                    rep.first_collapse = false;
    }

    rep.h_omega = cohomology(omega_sigma(t.m_I)).h;

    // lead operator restricted to the solution space
    const Mat<K> sol_i = sol(t.m_I);
    const Mat<K> lead_sol =
        detail::restrict_to_sol<K>(F, t.m_I.ops[0], sol_i, sol_i);
    const Cplx<K> sol_pt = Cplx<K>::concentrated(F, 0, sol_i.cols());
    const Cplx<K> sol_lead = fibre(ChainMap<K>(sol_pt, sol_pt, 0, {lead_sol}));
    rep.h_sol_lead = cohomology(sol_lead).h;
    rep.omega_identity = rep.h_omega == rep.h_sol_lead;

    // second sequence: the three-column double complex
    const Cplx<K> cj0 = omega_sigma0(t.m_J);
    const ChainMap<K> nabla_j = mult_map<K>(cj0, t.m_J.ops[0]);
    const ChainMap<K> phi0 = induced_koszul_map<K>(ci0, cj0, t.fibre_map());
    const DoubleCplx<K> big = detail::bigherr_double<K>(ci0, cj0, nabla_i, nabla_j, phi0);
    {
        const auto pages = ss_pages(big, Filtration::columns, ss_stabilisation_page(big));
        rep.second_collapse = true;
        for (int p = 0; p <= 2; ++p)
            for (int q = big.qlo; q <= big.qhi(); ++q)
                if (pages[1].dim_at(p, q) != pages.back().dim_at(p, q))
                    rep.second_collapse = false;
    }
    rep.h_phi_omega = cohomology(fibre(omega_sigma_phi_map(t))).h;

    const Mat<K> sol_j = sol(t.m_J);
    const Mat<K> lead_sol_j = detail::restrict_to_sol<K>(F, t.m_J.ops[0], sol_j, sol_j);
    const Mat<K> phi_sol = detail::restrict_to_sol<K>(F, t.fibre_map(), sol_i, sol_j);
    const Cplx<K> sol_pt_j = Cplx<K>::concentrated(F, 0, sol_j.cols());
    const Cplx<K> dsol_i = fibre(ChainMap<K>(sol_pt, sol_pt, 0, {lead_sol}));
    const Cplx<K> dsol_j = fibre(ChainMap<K>(sol_pt_j, sol_pt_j, 0, {lead_sol_j}));
    std::vector<Mat<K>> pmaps;
    for (int q = dsol_i.lo; q <= dsol_i.hi(); ++q) {
        // the point fibres have the source copy in degree 0, the target in 1
        std::vector<Mat<K>> blocks;
        if (q == 0 || q == 1) blocks.push_back(phi_sol);
        pmaps.push_back(block_diag<K>(F, blocks));
    }
    const Cplx<K> sol_phi = fibre(ChainMap<K>(dsol_i, dsol_j, dsol_i.lo, std::move(pmaps)));
    rep.h_sol_phi = cohomology(sol_phi).h;
    rep.phi_identity = rep.h_phi_omega == rep.h_sol_phi;
    return rep;
}

// endomorphism instances: run the phi variant with phi = identity so the
// fibre map is zero, and report the first sequence parts
template <field_scalar K>
FrolicherReport<K> frolicher_check(const OperatorModule<K>& m) {
    const TwoIntervalModule<K> t(m, m, eye<K>(m.field, m.dim));
    FrolicherReport<K> rep = frolicher_check(t);
    rep.has_phi = false;
    return rep;
}

}  // namespace exhom
