#pragma once

// Seeded generation of instances.  Commuting families are produced as
// polynomials in a single random base matrix (so commutativity is structural,
// not solved for), with zero blocks appended for analytic flags.  The base
// matrix is taken nilpotent on a coin flip to keep non-semisimple examples in
// every batch.

#include "exhom/operator_module.hpp"
#include "exhom/rng.hpp"

namespace exhom {

template <class F>
typename F::Scalar random_scalar(const F& field, Rng& rng) {
    using K = typename F::Scalar;
    if constexpr (std::is_same_v<K, Rat>) {
        (void)field;
        return Rat::fraction(rng.range(-3, 3), rng.range(1, 2));
    } else if constexpr (std::is_same_v<K, Fp>) {
        return field.from_int(static_cast<long>(rng.below(field.p)));
    } else {
        std::vector<std::uint32_t> c(field.ctx->n);
        for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(field.ctx->p));
        return field.element(c);
    }
}

template <class F>
Mat<typename F::Scalar> random_matrix(const F& field, Rng& rng, Index r, Index c) {
    using K = typename F::Scalar;
    Mat<K> m = zeros<K>(field, r, c);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) m(i, j) = random_scalar(field, rng);
    return m;
}

// random polynomial of degree <= 2 evaluated at a
template <class F>
Mat<typename F::Scalar> random_poly_in(const F& field, Rng& rng,
                                       const Mat<typename F::Scalar>& a) {
    using K = typename F::Scalar;
    const Index n = a.rows();
    Mat<K> r = zeros<K>(field, n, n);
    Mat<K> pw = eye<K>(field, n);
    const int deg = static_cast<int>(rng.below(3));
    for (int d = 0; d <= deg; ++d) {
        r = r + pw * random_scalar(field, rng);
        pw = Mat<K>(pw * a);
    }
    return r;
}

// op_count operators x_0 .. x_{op_count-1}; indices >= analytic_from are zero
template <class F>
OperatorModule<typename F::Scalar> random_operator_module(
    const F& field, Rng& rng, Index dim, int op_count,
    std::optional<int> analytic_from = std::nullopt) {
    using K = typename F::Scalar;
    Mat<K> base = random_matrix(field, rng, dim, dim);
    if (rng.below(2) == 0) {  // strictly upper triangular: nilpotent base
        for (Index i = 0; i < dim; ++i)
            for (Index j = 0; j <= i; ++j) base(i, j) = field.zero();
    }
    std::vector<Mat<K>> ops;
    std::vector<std::string> labels;
    for (int i = 0; i < op_count; ++i) {
        const bool killed = analytic_from && i >= *analytic_from;
        ops.push_back(killed ? zeros<K>(field, dim, dim) : random_poly_in(field, rng, base));
        labels.push_back(i == 0 ? "x0" : "nabla" + std::to_string(i));
    }
    std::optional<AnalyticFlags> flags;
    if (analytic_from) flags = AnalyticFlags{op_count - 1, *analytic_from};
    return OperatorModule<K>(field, dim, std::move(ops), std::move(labels), flags);
}

// equal-sided pair joined by a polynomial in the same base matrix
template <class F>
TwoIntervalModule<typename F::Scalar> random_two_interval_equal(const F& field, Rng& rng,
                                                                Index dim, int op_count) {
    using K = typename F::Scalar;
    Mat<K> base = random_matrix(field, rng, dim, dim);
    std::vector<Mat<K>> ops;
    std::vector<std::string> labels;
    for (int i = 0; i < op_count; ++i) {
        ops.push_back(random_poly_in(field, rng, base));
        labels.push_back("nabla" + std::to_string(i + 1));
    }
    OperatorModule<K> side(field, dim, ops, labels);
    Mat<K> phi = random_poly_in(field, rng, base);
    return TwoIntervalModule<K>(side, side, std::move(phi));
}

// unequal sides: m_I = M (+) N blockwise, m_J = M, phi = projection
template <class F>
TwoIntervalModule<typename F::Scalar> random_two_interval_projection(const F& field, Rng& rng,
                                                                     Index dim_m, Index dim_n,
                                                                     int op_count) {
    using K = typename F::Scalar;
    const OperatorModule<K> m = random_operator_module(field, rng, dim_m, op_count);
    const OperatorModule<K> n = random_operator_module(field, rng, dim_n, op_count);
    std::vector<Mat<K>> ops_i;
    std::vector<std::string> labels;
    for (int i = 0; i < op_count; ++i) {
        ops_i.push_back(block_diag<K>(field, {m.ops[static_cast<std::size_t>(i)],
                                              n.ops[static_cast<std::size_t>(i)]}));
        labels.push_back("nabla" + std::to_string(i + 1));
    }
    OperatorModule<K> mi(field, dim_m + dim_n, std::move(ops_i), labels);
    OperatorModule<K> mj(field, dim_m, m.ops, labels);
    Mat<K> phi = zeros<K>(field, dim_m, dim_m + dim_n);
    phi.leftCols(dim_m) = eye<K>(field, dim_m);
    return TwoIntervalModule<K>(std::move(mi), std::move(mj), std::move(phi));
}

}  // namespace exhom
