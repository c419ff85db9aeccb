#include "doctest.h"

#include <algorithm>

#include "exhom/linalg.hpp"
#include "exhom/rng.hpp"
#include "oracle.hpp"

using namespace exhom;

namespace {

template <class F>
Mat<typename F::Scalar> random_mat(const F& field, Rng& rng, Index r, Index c, long span = 0) {
    using K = typename F::Scalar;
    Mat<K> m = zeros<K>(field, r, c);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) {
            if constexpr (std::is_same_v<K, Rat>) {
                m(i, j) = Rat::fraction(rng.range(-3, 3), rng.range(1, 2));
            } else if constexpr (std::is_same_v<K, Fp>) {
                m(i, j) = field.from_int(static_cast<long>(rng.below(field.p)));
            } else {
                (void)span;
                std::vector<std::uint32_t> cs(field.ctx->n);
                for (auto& x : cs) x = static_cast<std::uint32_t>(rng.below(field.ctx->p));
                m(i, j) = field.element(cs);
            }
        }
    return m;
}

template <class F>
void check_rank_profile_properties(const F& field, Rng& rng, Index r, Index c) {
    using K = typename F::Scalar;
    const Mat<K> m = random_mat(field, rng, r, c);
    const RankProfile<K> rp = rank_profile<K>(field, m);

    // independent row-reduction oracle
    CHECK(rp.rank == oracle::naive_rank<K>(m));
    // rank-nullity
    CHECK(rp.rank + rp.kernel_basis.cols() == m.cols());
    // kernel columns annihilated by m
    CHECK(is_zero_mat<K>(Mat<K>(m * rp.kernel_basis)));
    // kernel columns independent
    CHECK(oracle::naive_rank<K>(rp.kernel_basis) == rp.kernel_basis.cols());
    // image basis spans the column space
    CHECK(oracle::naive_rank<K>(rp.image_basis) == rp.rank);
    CHECK(oracle::naive_rank<K>(hstack<K>(rp.image_basis, m)) == rp.rank);

    // invariance under row permutation: rank, pivots and (canonical) kernel
    if (r > 1) {
        Mat<K> perm = m;
        for (Index i = 0; i < r / 2; ++i) perm.row(i).swap(perm.row(r - 1 - i));
        const RankProfile<K> rp2 = rank_profile<K>(field, perm);
        CHECK(rp2.rank == rp.rank);
        CHECK(rp2.pivot_cols == rp.pivot_cols);
        CHECK(mat_eq<K>(rp2.kernel_basis, rp.kernel_basis));
    }
}

template <class F>
void check_solver(const F& field, Rng& rng, Index r, Index c, Index k) {
    using K = typename F::Scalar;
    const Mat<K> a = random_mat(field, rng, r, c);
    const Mat<K> x0 = random_mat(field, rng, c, k);
    const Mat<K> b = a * x0;
    const auto x = solve_linear<K>(field, a, b);
    REQUIRE(x.has_value());
    CHECK(is_zero_mat<K>(Mat<K>(a * *x - b)));
}

}  // namespace

TEST_CASE("rank profile: identity and nilpotent frozen cases") {
    Fp::Field F5(5);
    const auto id = rank_profile<Fp>(F5, eye<Fp>(F5, 2));
    CHECK(id.rank == 2);
    CHECK(id.kernel_basis.cols() == 0);

    Rat::Field Q;
    Mat<Rat> n = zeros<Rat>(Q, 2, 2);
    n(0, 1) = Rat(1);
    const auto rp = rank_profile<Rat>(Q, n);
    CHECK(rp.rank == 1);
    REQUIRE(rp.kernel_basis.cols() == 1);
    CHECK(rp.kernel_basis(0, 0) == Rat(1));
    CHECK(rp.kernel_basis(1, 0) == Rat(0));
}

TEST_CASE("rank profile on empty shapes") {
    Rat::Field Q;
    const auto rp0 = rank_profile<Rat>(Q, zeros<Rat>(Q, 0, 3));
    CHECK(rp0.rank == 0);
    CHECK(rp0.kernel_basis.cols() == 3);
    CHECK(mat_eq<Rat>(rp0.kernel_basis, eye<Rat>(Q, 3)));
    const auto rp1 = rank_profile<Rat>(Q, zeros<Rat>(Q, 3, 0));
    CHECK(rp1.rank == 0);
    CHECK(rp1.kernel_basis.cols() == 0);
}

TEST_CASE("rank profile matches the naive oracle on random instances") {
    Rng rng(2024);
    Fp::Field F7(7);
    for (int i = 0; i < 60; ++i)
        check_rank_profile_properties(F7, rng, 1 + rng.below(7), 1 + rng.below(9));

    Rat::Field Q;
    for (int i = 0; i < 40; ++i)
        check_rank_profile_properties(Q, rng, 1 + rng.below(6), 1 + rng.below(6));

    Fq::Field F9(FieldSpec::gf(3, 2));
    for (int i = 0; i < 30; ++i)
        check_rank_profile_properties(F9, rng, 1 + rng.below(5), 1 + rng.below(5));
}

TEST_CASE("random 6x9 over GF(7) rank equals oracle rank") {
    Rng rng(42);
    Fp::Field F7(7);
    const Mat<Fp> m = random_mat(F7, rng, 6, 9);
    CHECK(rank_profile<Fp>(F7, m).rank == oracle::naive_rank<Fp>(m));
}

TEST_CASE("solve_linear identity, zero and constructed systems") {
    Fp::Field F3(3);
    Rng rng(5);
    const Mat<Fp> b = random_mat(F3, rng, 4, 2);
    const auto x = solve_linear<Fp>(F3, eye<Fp>(F3, 4), b);
    REQUIRE(x.has_value());
    CHECK(mat_eq<Fp>(*x, b));

    // zero system accepts zero
    const auto z = solve_linear<Fp>(F3, zeros<Fp>(F3, 2, 2), zeros<Fp>(F3, 2, 1));
    REQUIRE(z.has_value());
    CHECK(is_zero_mat<Fp>(*z));

    // inconsistent system
    Mat<Fp> rhs = zeros<Fp>(F3, 2, 1);
    rhs(0, 0) = F3.one();
    CHECK_FALSE(solve_linear<Fp>(F3, zeros<Fp>(F3, 2, 2), rhs).has_value());

    for (int i = 0; i < 40; ++i) check_solver(F3, rng, 1 + rng.below(6), 1 + rng.below(6), 1 + rng.below(2));
    Rat::Field Q;
    for (int i = 0; i < 25; ++i) check_solver(Q, rng, 1 + rng.below(5), 1 + rng.below(5), 1);
}

TEST_CASE("bareiss handles rank-deficient rational matrices with fractions") {
    Rat::Field Q;
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const Index r = 2 + rng.below(4), c = 2 + rng.below(4);
        Mat<Rat> m = random_mat(Q, rng, r, c);
        m.row(r - 1) = m.row(0);  // force dependence
        const auto rp = rank_profile<Rat>(Q, m);
        CHECK(rp.rank == oracle::naive_rank<Rat>(m));
        CHECK(is_zero_mat<Rat>(Mat<Rat>(m * rp.kernel_basis)));
    }
}

TEST_CASE("frobenius map is an automorphism fixing the prime field") {
    Fq::Field F(FieldSpec::gf(2, 2));
    Rng rng(3);
    Mat<Fq> a = random_mat(F, rng, 3, 3);
    Mat<Fq> b = random_mat(F, rng, 3, 3);
    const Mat<Fq> fab = frobenius_map<Fq>(F, Mat<Fq>(a * b), 1);
    CHECK(mat_eq<Fq>(fab, Mat<Fq>(frobenius_map<Fq>(F, a, 1) * frobenius_map<Fq>(F, b, 1))));
    CHECK(mat_eq<Fq>(frobenius_map<Fq>(F, a, 0), a));
    // power n is the identity
    CHECK(mat_eq<Fq>(frobenius_map<Fq>(F, a, 2), a));
    // prime-field entries are fixed
    Mat<Fq> c = zeros<Fq>(F, 1, 1);
    c(0, 0) = F.one();
    CHECK(mat_eq<Fq>(frobenius_map<Fq>(F, c, 1), c));

    // unsupported on rationals / prime fields for power > 0
    Rat::Field Q;
    Mat<Rat> m = eye<Rat>(Q, 2);
    CHECK_THROWS_AS((void)frobenius_map<Rat>(Q, m, 1), FieldError);
    CHECK(mat_eq<Rat>(frobenius_map<Rat>(Q, m, 0), m));
}

TEST_CASE("field mismatch inside a matrix is detected") {
    Fp::Field F5(5), F7(7);
    Mat<Fp> m = zeros<Fp>(F5, 2, 2);
    m(0, 0) = F7.one();  // wrong field
    CHECK_THROWS_AS((void)rank_profile<Fp>(F5, m), FieldError);
}
