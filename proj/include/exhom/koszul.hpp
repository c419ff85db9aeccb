#pragma once

// Koszul complexes of commuting operator families, in two builds: the
// subset-indexed cochain complex and the iterated-cone chain complex, with
// the sign-decorated identification between them, plus the splitting of the
// full complex into binomially many shifted copies of a core complex when a
// tail of the operators acts as zero.
//
// Cochain conventions: the degree-q term of K(x_(i_1) .. x_(i_l); M) is
// M^(binom(l, q)), indexed by the q-subsets of {0..l-1} in colexicographic
// order; (dm)_S = sum_{i in S} (-1)^{pos(i, S)} x_i m_{S\{i}} with pos(i, S)
// the number of elements of S below i.

#include <map>

#include "exhom/combinatorics.hpp"
#include "exhom/complexes.hpp"
#include "exhom/operator_module.hpp"

namespace exhom {

// q-subsets of {0..l-1} in colexicographic order
inline std::vector<std::vector<int>> subsets_colex(int l, int q) {
    std::vector<std::vector<int>> out;
    if (q < 0 || q > l) return out;
    std::vector<int> s(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) s[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(s);
        int j = 0;
        while (j < q) {
            const int cap = (j + 1 < q) ? s[static_cast<std::size_t>(j + 1)] : l;
            if (s[static_cast<std::size_t>(j)] + 1 < cap) break;
            ++j;
        }
        if (j >= q) break;
        ++s[static_cast<std::size_t>(j)];
        for (int i = 0; i < j; ++i) s[static_cast<std::size_t>(i)] = i;
    }
    return out;
}

inline int subset_pos(int i, const std::vector<int>& sorted_subset) {
    int p = 0;
    for (int s : sorted_subset) p += (s < i) ? 1 : 0;
    return p;
}

namespace detail {

struct SubsetIndex {
    std::vector<std::vector<std::vector<int>>> by_deg;  // [q] -> colex list
    std::vector<std::map<std::vector<int>, Index>> rank;

    explicit SubsetIndex(int l) {
        by_deg.resize(static_cast<std::size_t>(l) + 1);
        rank.resize(static_cast<std::size_t>(l) + 1);
        for (int q = 0; q <= l; ++q) {
            by_deg[static_cast<std::size_t>(q)] = subsets_colex(l, q);
            Index r = 0;
            for (const auto& s : by_deg[static_cast<std::size_t>(q)])
                rank[static_cast<std::size_t>(q)][s] = r++;
        }
    }
};

}  // namespace detail

template <field_scalar K>
Cplx<K> koszul_cochain(const OperatorModule<K>& m, std::vector<int> subset) {
    if (subset.empty()) throw FieldError("koszul: empty operator subset");
    std::sort(subset.begin(), subset.end());
    for (std::size_t i = 0; i + 1 < subset.size(); ++i)
        if (subset[i] == subset[i + 1]) throw FieldError("koszul: repeated operator index");
    for (int i : subset)
        if (i < 0 || i >= m.op_count()) throw FieldError("koszul: operator index out of range");

    const int l = static_cast<int>(subset.size());
    const Index D = m.dim;
    const detail::SubsetIndex idx(l);

    std::vector<Index> dims;
    for (int q = 0; q <= l; ++q)
        dims.push_back(static_cast<Index>(binomial(l, q)) * D);

    std::vector<Mat<K>> diffs;
    for (int q = 0; q < l; ++q) {
        Mat<K> d = zeros<K>(m.field, dims[static_cast<std::size_t>(q + 1)],
                            dims[static_cast<std::size_t>(q)]);
        const auto& targets = idx.by_deg[static_cast<std::size_t>(q + 1)];
        for (Index t = 0; t < static_cast<Index>(targets.size()); ++t) {
            const auto& T = targets[static_cast<std::size_t>(t)];
            for (std::size_t pos = 0; pos < T.size(); ++pos) {
                std::vector<int> S = T;
                S.erase(S.begin() + static_cast<std::ptrdiff_t>(pos));
                const Index s = idx.rank[static_cast<std::size_t>(q)].at(S);
                const Mat<K>& X = m.ops[static_cast<std::size_t>(subset[static_cast<std::size_t>(T[pos])])];
                d.block(t * D, s * D, D, D) = (pos % 2 == 0) ? X : Mat<K>(-X);
            }
        }
        diffs.push_back(std::move(d));
    }
    return Cplx<K>(m.field, 0, std::move(dims), std::move(diffs));
}

// multiplication by X on a complex whose every term is a sum of copies of a
// dim-`unit` module
template <field_scalar K>
ChainMap<K> mult_map(const Cplx<K>& c, const Mat<K>& X) {
    const Index unit = X.rows();
    std::vector<Mat<K>> maps;
    for (int q = c.lo; q <= c.hi(); ++q) {
        const Index copies = unit == 0 ? 0 : c.dim(q) / unit;
        if (copies * unit != c.dim(q)) throw FieldError("mult_map: term is not a module power");
        maps.push_back(kron<K>(c.field, eye<K>(c.field, copies), X));
    }
    return ChainMap<K>(c, c, c.lo, std::move(maps));
}

// chain map between same-shaped Koszul complexes induced by an equivariant
// map of the underlying modules
template <field_scalar K>
ChainMap<K> induced_koszul_map(const Cplx<K>& ci, const Cplx<K>& cj, const Mat<K>& g) {
    const Index ui = g.cols(), uj = g.rows();
    std::vector<Mat<K>> maps;
    for (int q = ci.lo; q <= ci.hi(); ++q) {
        const Index copies = ui == 0 ? 0 : ci.dim(q) / ui;
        if ((ui && copies * ui != ci.dim(q)) || (uj && copies * uj != cj.dim(q)))
            throw FieldError("induced koszul map: block shape mismatch");
        maps.push_back(kron<K>(ci.field, eye<K>(ci.field, copies), g));
    }
    return ChainMap<K>(ci, cj, ci.lo, std::move(maps));
}

inline std::vector<int> index_range(int n, int from = 0) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = from + i;
    return v;
}

// iterated-cone build; lives in cohomological degrees [-l, 0]
template <field_scalar K>
Cplx<K> koszul_chain(const OperatorModule<K>& m, std::vector<int> subset) {
    if (subset.empty()) throw FieldError("koszul: empty operator subset");
    std::sort(subset.begin(), subset.end());
    Cplx<K> c = Cplx<K>::concentrated(m.field, 0, m.dim);
    for (int i : subset) {
        if (i < 0 || i >= m.op_count()) throw FieldError("koszul: operator index out of range");
        c = cone(mult_map<K>(c, m.ops[static_cast<std::size_t>(i)]));
    }
    return c;
}

namespace detail {

// order of the copy-of-M blocks in the iterated-cone chain complex: at chain
// degree -t the blocks are the t-subsets, source halves (containing the most
// recently coned index) first
inline std::vector<std::vector<int>> chain_block_order(int l, int t) {
    if (t < 0 || t > l) return {};
    if (l == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (auto& s : chain_block_order(l - 1, t - 1)) {
        s.push_back(l - 1);
        out.push_back(std::move(s));
    }
    for (auto& s : chain_block_order(l - 1, t)) out.push_back(std::move(s));
    return out;
}

}  // namespace detail

// The sign-decorated identification K^(subset; M) ~ K_(subset; M)[-l], an
// isomorphism of complexes (not merely a quasi-isomorphism).
template <field_scalar K>
ChainMap<K> duality_check(const OperatorModule<K>& m, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    const int l = static_cast<int>(subset.size());
    const Index D = m.dim;
    const Cplx<K> a = koszul_cochain(m, subset);
    const Cplx<K> b = shift(koszul_chain(m, subset), -l);
    const detail::SubsetIndex idx(l);

    std::vector<Mat<K>> maps;
    for (int q = 0; q <= l; ++q) {
        // chain blocks at degree q (= chain degree q - l, subsets of size l - q)
        const auto chain_order = detail::chain_block_order(l, l - q);
        std::map<std::vector<int>, Index> chain_rank;
        Index r = 0;
        for (const auto& t : chain_order) {
            std::vector<int> key = t;
            std::sort(key.begin(), key.end());
            chain_rank[key] = r++;
        }
        Mat<K> phi = zeros<K>(m.field, b.dim(q), a.dim(q));
        const auto& srcs = idx.by_deg[static_cast<std::size_t>(q)];
        for (Index s = 0; s < static_cast<Index>(srcs.size()); ++s) {
            const auto& S = srcs[static_cast<std::size_t>(s)];
            std::vector<int> T;  // complement of S in {0..l-1}
            for (int i = 0; i < l; ++i)
                if (!std::binary_search(S.begin(), S.end(), i)) T.push_back(i);
            long e = static_cast<long>(static_cast<std::uint64_t>(S.size()) *
                                       (S.size() - 1) / 2);
            for (int i : S) e += i + 1;
            const K sign = (e % 2 == 0) ? m.field.one() : -m.field.one();
            const Index t = chain_rank.at(T);
            phi.block(t * D, s * D, D, D) = Mat<K>(eye<K>(m.field, D) * sign);
        }
        maps.push_back(std::move(phi));
    }
    ChainMap<K> iso(a, b, 0, std::move(maps));  // constructor validates the squares
    if (!is_degreewise_iso(iso)) throw FieldError("koszul duality map failed to be an iso");
    return iso;
}

// Cohomology dims of the Hom-side complex against the tensor-side complex
// shifted by l (both built independently).
template <field_scalar K>
bool rhom_vs_tensor_check(const OperatorModule<K>& m, std::vector<int> subset) {
    const int l = static_cast<int>(subset.size());
    const auto hom_side = cohomology(koszul_cochain(m, subset));
    const auto tensor_side = cohomology(shift(koszul_chain(m, subset), -l));
    for (int q = -1; q <= l + 1; ++q)
        if (hom_side.h_at(q) != tensor_side.h_at(q)) return false;
    return true;
}

// Explicit block-identity isomorphism cone(0: C -> C)[-1] ~ C (+) C[-1].
template <field_scalar K>
ChainMap<K> zero_cone_split(const Cplx<K>& c) {
    const Cplx<K> lhs = shift(cone(zero_map(c, c)), -1);
    const Cplx<K> rhs = direct_sum<K>({c, shift(c, -1)});
    std::vector<Mat<K>> maps;
    for (int q = lhs.lo; q <= lhs.hi(); ++q) maps.push_back(eye<K>(c.field, lhs.dim(q)));
    ChainMap<K> iso(lhs, rhs, lhs.lo, std::move(maps));
    if (!is_degreewise_iso(iso)) throw FieldError("zero-cone split failed to be an iso");
    return iso;
}

// ---------------------------------------------------------------------------
// Splitting when the operators from index k on act as zero:
//   K(x_0..x_d; M)  ~  (+)_{n=0}^{j} K(x_0..x_{k-1}; M)[-n]^(binom(j, n)),
// j = d - k + 1, with the explicit signed identification.

template <field_scalar K>
struct DecomposeResult {
    Cplx<K> lhs, rhs, core;
    ChainMap<K> iso;  // lhs -> rhs
    std::vector<Index> h_lhs, h_rhs, h_core;
    unsigned j = 0;
    std::vector<std::uint64_t> multiplicities;  // binom(j, n), n = 0..j
    bool dims_identity_ok = false;
};

template <field_scalar K>
DecomposeResult<K> decompose(const OperatorModule<K>& m, int k) {
    const int d = m.op_count() - 1;
    if (k < 1 || k > d) throw FieldError("decompose: k must be in 1..d");
    for (int i = k; i <= d; ++i)
        if (!is_zero_mat<K>(m.ops[static_cast<std::size_t>(i)]))
            throw FieldError("decompose: operator " + m.labels[static_cast<std::size_t>(i)] +
                             " past the cut is not zero");

    const unsigned j = static_cast<unsigned>(d - k + 1);
    const Index D = m.dim;

    std::vector<int> all(static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i) all[static_cast<std::size_t>(i)] = i;
    std::vector<int> head(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) head[static_cast<std::size_t>(i)] = i;

    const Cplx<K> lhs = koszul_cochain(m, all);
    const Cplx<K> core = koszul_cochain(m, head);

    // summands indexed by the subsets H of {k..d}, grouped by size
    std::vector<std::vector<int>> hs;  // as positions in {k..d}
    std::vector<Cplx<K>> summands;
    for (unsigned n = 0; n <= j; ++n) {
        for (const auto& h : subsets_colex(static_cast<int>(j), static_cast<int>(n))) {
            hs.push_back(h);
            summands.push_back(shift(core, -static_cast<int>(n)));
        }
    }
    const Cplx<K> rhs = direct_sum<K>(summands);

    const detail::SubsetIndex idx_all(d + 1);
    const detail::SubsetIndex idx_head(k);

    std::vector<Mat<K>> maps;
    for (int q = lhs.lo; q <= lhs.hi(); ++q) {
        Mat<K> phi = zeros<K>(m.field, rhs.dim(q), lhs.dim(q));
        Index row_off = 0;
        for (std::size_t hidx = 0; hidx < hs.size(); ++hidx) {
            const auto& H = hs[hidx];
            const int n = static_cast<int>(H.size());
            const int cq = q - n;  // degree inside the core copy (core spans 0..k)
            if (cq < 0 || cq > k) {
                row_off += summands[hidx].dim(q);
                continue;
            }
            const auto& lows = idx_head.by_deg[static_cast<std::size_t>(cq)];
            for (Index s0 = 0; s0 < static_cast<Index>(lows.size()); ++s0) {
                std::vector<int> S = lows[static_cast<std::size_t>(s0)];
                for (int hpos : H) S.push_back(k + hpos);
                std::sort(S.begin(), S.end());
                const Index col = idx_all.rank[static_cast<std::size_t>(q)].at(S) * D;
                const long e = static_cast<long>(n) * cq;
                const K sign = (e % 2 == 0) ? m.field.one() : -m.field.one();
                phi.block(row_off + s0 * D, col, D, D) = Mat<K>(eye<K>(m.field, D) * sign);
            }
            row_off += summands[hidx].dim(q);
        }
        maps.push_back(std::move(phi));
    }

    DecomposeResult<K> res{lhs,
                           rhs,
                           core,
                           ChainMap<K>(lhs, rhs, lhs.lo, std::move(maps)),
                           {},
                           {},
                           {},
                           j,
                           {},
                           false};
    if (!is_degreewise_iso(res.iso)) throw FieldError("decompose: identification is not an iso");

    res.h_lhs = cohomology(lhs).h;
    res.h_rhs = cohomology(rhs).h;
    res.h_core = cohomology(core).h;
    for (unsigned n = 0; n <= j; ++n) res.multiplicities.push_back(binomial(j, n));

    res.dims_identity_ok = true;
    for (int i = 0; i <= d + 1; ++i) {
        std::uint64_t expect = 0;
        for (unsigned n = 0; n <= j; ++n) {
            const int ci = i - static_cast<int>(n);
            if (ci >= 0 && ci <= k)
                expect += binomial(j, n) * static_cast<std::uint64_t>(res.h_core[static_cast<std::size_t>(ci)]);
        }
        if (static_cast<std::uint64_t>(res.h_lhs[static_cast<std::size_t>(i)]) != expect)
            res.dims_identity_ok = false;
    }
    return res;
}

}  // namespace exhom
