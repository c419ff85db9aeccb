#include "doctest.h"

#include "exhom/instance_gen.hpp"
#include "exhom/koszul.hpp"
#include "oracle.hpp"

using namespace exhom;

namespace {

std::vector<int> upto(int l) {
    std::vector<int> v(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

template <class K>
std::vector<Index> oracle_dims(const Cplx<K>& c) {
    std::vector<Mat<K>> diffs;
    for (int q = c.lo; q < c.hi(); ++q) diffs.push_back(c.diff(q));
    return oracle::naive_cohomology_dims<K>(c.dims, diffs);
}

}  // namespace

TEST_CASE("colex subset enumeration") {
    CHECK(subsets_colex(3, 0) == std::vector<std::vector<int>>{{}});
    CHECK(subsets_colex(3, 1) == std::vector<std::vector<int>>{{0}, {1}, {2}});
    CHECK(subsets_colex(4, 2) ==
          std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}});
    CHECK(subsets_colex(3, 3) == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("operator module validation") {
    Fp::Field F(2);
    Mat<Fp> a = zeros<Fp>(F, 2, 2);
    a(0, 1) = F.one();
    Mat<Fp> b = zeros<Fp>(F, 2, 2);
    b(1, 0) = F.one();
    // a and b do not commute
    CHECK_THROWS_AS(OperatorModule<Fp>(F, 2, {a, b}, {"x0", "x1"}), FieldError);
    CHECK_NOTHROW(OperatorModule<Fp>(F, 2, {a, a}, {"x0", "x1"}));
    // flagged operators must vanish
    CHECK_THROWS_AS(OperatorModule<Fp>(F, 2, {a, a}, {"x0", "x1"}, AnalyticFlags{1, 1}),
                    FieldError);
    CHECK_NOTHROW(
        OperatorModule<Fp>(F, 2, {a, zeros<Fp>(F, 2, 2)}, {"x0", "x1"}, AnalyticFlags{1, 1}));
}

TEST_CASE("koszul cochain of zero operators has binomial cohomology") {
    Rat::Field Q;
    // one zero operator on K: h = (1, 1)
    const auto triv1 = trivial_module<Rat>(Q, {"x0"});
    CHECK(cohomology(koszul_cochain(triv1, {0})).h == std::vector<Index>{1, 1});

    // two zero operators on K: dims (1,2,1) and h = (1,2,1)
    const auto triv2 = trivial_module<Rat>(Q, {"x0", "x1"});
    const Cplx<Rat> k2 = koszul_cochain(triv2, {0, 1});
    CHECK(k2.dims == std::vector<Index>{1, 2, 1});
    CHECK(cohomology(k2).h == std::vector<Index>{1, 2, 1});

    // d+1 zero operators on K: h^1 = d+1
    for (int d = 1; d <= 4; ++d) {
        const auto triv = trivial_module<Rat>(Q, std::vector<std::string>(d + 1, "z"));
        const auto h = cohomology(koszul_cochain(triv, upto(d + 1))).h;
        CHECK(h[1] == d + 1);
    }
}

TEST_CASE("koszul cochain of a nilpotent operator over GF(2)") {
    Fp::Field F(2);
    Mat<Fp> x = zeros<Fp>(F, 2, 2);
    x(0, 1) = F.one();
    const OperatorModule<Fp> m(F, 2, {x}, {"x"});
    // kernel and cokernel of the nilpotent matrix are one-dimensional
    CHECK(cohomology(koszul_cochain(m, {0})).h == std::vector<Index>{1, 1});
}

TEST_CASE("koszul chain: single invertible operator is acyclic") {
    Fp::Field F(5);
    Mat<Fp> u = eye<Fp>(F, 2);
    const OperatorModule<Fp> m(F, 2, {u}, {"u"});
    const Cplx<Fp> kc = koszul_chain(m, {0});
    CHECK(kc.lo == -1);
    CHECK(cohomology(kc).h == std::vector<Index>{0, 0});

    // two zero operators on K: dims (1,2,1) in degrees -2..0
    Rat::Field Q;
    const auto triv2 = trivial_module<Rat>(Q, {"a", "b"});
    const Cplx<Rat> k2 = koszul_chain(triv2, {0, 1});
    CHECK(k2.lo == -2);
    CHECK(k2.dims == std::vector<Index>{1, 2, 1});
}

TEST_CASE("koszul self-duality: explicit iso on fixed and random instances") {
    Rat::Field Q;
    // l = 1, zero operator: swap of the two degrees with a sign
    CHECK_NOTHROW(duality_check(trivial_module<Rat>(Q, {"x"}), {0}));
    // l = 2 trivial module: (1,2,1) against shifted (1,2,1)
    CHECK_NOTHROW(duality_check(trivial_module<Rat>(Q, {"x", "y"}), {0, 1}));

    // random three-operator module over GF(5)
    Fp::Field F(5);
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = random_operator_module(F, rng, 1 + rng.below(4), 3);
        CHECK_NOTHROW(duality_check(m, {0, 1, 2}));
    }
    // subsets of the family work too
    const auto m = random_operator_module(F, rng, 3, 4);
    CHECK_NOTHROW(duality_check(m, {1, 3}));

    // up to five operators on modules of dimension up to four
    for (int trial = 0; trial < 4; ++trial) {
        const auto big = random_operator_module(F, rng, 1 + rng.below(4), 5);
        CHECK_NOTHROW(duality_check(big, {0, 1, 2, 3, 4}));
        CHECK(rhom_vs_tensor_check(big, {0, 1, 2, 3, 4}));
    }
}

TEST_CASE("hom-koszul vs tensor-koszul cohomology dims agree after shift") {
    Rat::Field Q;
    CHECK(rhom_vs_tensor_check(trivial_module<Rat>(Q, {"x", "y"}), {0, 1}));

    Fp::Field F2(2);
    Mat<Fp> x = zeros<Fp>(F2, 2, 2);
    x(0, 1) = F2.one();
    const OperatorModule<Fp> nil(F2, 2, {x}, {"x"});
    CHECK(rhom_vs_tensor_check(nil, {0}));

    Fp::Field F5(5);
    Rng rng(202);
    for (int trial = 0; trial < 8; ++trial) {
        const auto m = random_operator_module(F5, rng, 1 + rng.below(3), 3);
        CHECK(rhom_vs_tensor_check(m, {0, 1, 2}));
    }
}

TEST_CASE("zero-cone split is a block-identity isomorphism") {
    Fp::Field F(3);
    const Cplx<Fp> pt = Cplx<Fp>::concentrated(F, 0, 1);
    const auto split_pt = zero_cone_split(pt);
    CHECK(split_pt.tgt.dims == std::vector<Index>{1, 1});

    Rng rng(303);
    const auto m = random_operator_module(F, rng, 2, 2);
    const Cplx<Fp> c = koszul_cochain(m, {0, 1});
    CHECK_NOTHROW(zero_cone_split(c));
}

TEST_CASE("decompose: trivial module, d = 2, k = 2") {
    Rat::Field Q;
    auto triv = trivial_module<Rat>(Q, {"x0", "nabla1", "nabla2"});
    const auto res = decompose(triv.with_flags(AnalyticFlags{2, 2}), 2);
    CHECK(res.h_lhs == std::vector<Index>{1, 3, 3, 1});
    CHECK(res.h_rhs == std::vector<Index>{1, 3, 3, 1});
    CHECK(res.h_core == std::vector<Index>{1, 2, 1});
    CHECK(res.j == 1);
    CHECK(res.multiplicities == std::vector<std::uint64_t>{1, 1});
    CHECK(res.dims_identity_ok);
}

TEST_CASE("decompose: nilpotent x0 over GF(2), d = 3, k = 2, oracle cross-check") {
    Fp::Field F(2);
    Mat<Fp> x0 = zeros<Fp>(F, 2, 2);
    x0(0, 1) = F.one();
    const Mat<Fp> z = zeros<Fp>(F, 2, 2);
    const OperatorModule<Fp> m(F, 2, {x0, z, z, z}, {"x0", "nabla1", "nabla2", "nabla3"},
                               AnalyticFlags{3, 2});
    const auto res = decompose(m, 2);
    CHECK(res.dims_identity_ok);
    // independent brute-force cohomology on the unfactored complex
    CHECK(res.h_lhs == oracle_dims(res.lhs));
    // h^i(lhs) = sum_j binom(2, j) h^{i-j}(core)
    for (int i = 0; i < static_cast<int>(res.h_lhs.size()); ++i) {
        std::uint64_t expect = 0;
        for (int jj = 0; jj <= 2; ++jj) {
            const int ci = i - jj;
            if (ci >= 0 && ci < static_cast<int>(res.h_core.size()))
                expect += binomial(2, static_cast<unsigned>(jj)) *
                          static_cast<std::uint64_t>(res.h_core[static_cast<std::size_t>(ci)]);
        }
        CHECK(static_cast<std::uint64_t>(res.h_lhs[static_cast<std::size_t>(i)]) == expect);
    }
}

TEST_CASE("decompose on random analytic instances with oracle cross-check") {
    Rng rng(404);
    Fp::Field F2(2);
    Fp::Field F5(5);
    Rat::Field Q;
    auto run = [&](auto field, int count) {
        for (int t = 0; t < count; ++t) {
            const int d = 2 + static_cast<int>(rng.below(3));  // 2..4
            const int k = 2;
            const Index dim = 1 + static_cast<Index>(rng.below(3));
            const auto m = random_operator_module(field, rng, dim, d + 1, k);
            const auto res = decompose(m, k);
            CHECK(res.dims_identity_ok);
            CHECK(res.h_lhs == oracle_dims(res.lhs));
        }
    };
    run(F2, 8);
    run(F5, 8);
    run(Q, 5);
}

TEST_CASE("decompose rejects a nonzero flagged operator") {
    Fp::Field F(3);
    Rng rng(7);
    const auto m = random_operator_module(F, rng, 2, 3);  // no zero tail
    bool all_zero = true;
    for (int i = 2; i < 3; ++i) all_zero = all_zero && is_zero_mat<Fp>(m.ops[2]);
    if (!all_zero) CHECK_THROWS_AS((void)decompose(m, 2), FieldError);
}

TEST_CASE("reordering commuting operators preserves cohomology dims") {
    Fp::Field F(5);
    Rng rng(505);
    for (int t = 0; t < 6; ++t) {
        const auto m = random_operator_module(F, rng, 2, 3);
        const auto h1 = cohomology(koszul_cochain(m, {0, 1, 2})).h;
        OperatorModule<Fp> perm(F, m.dim, {m.ops[2], m.ops[0], m.ops[1]}, {"a", "b", "c"});
        const auto h2 = cohomology(koszul_cochain(perm, {0, 1, 2})).h;
        CHECK(h1 == h2);
    }
}

TEST_CASE("chi of any koszul complex with at least one operator is zero") {
    Fp::Field F(3);
    Rng rng(606);
    for (int t = 0; t < 10; ++t) {
        const int l = 1 + static_cast<int>(rng.below(3));
        const auto m = random_operator_module(F, rng, 1 + rng.below(4), l);
        CHECK(euler_char(koszul_cochain(m, upto(l))) == 0);
    }
}
