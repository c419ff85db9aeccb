#include "doctest.h"

#include "exhom/fields.hpp"
#include "exhom/linalg.hpp"
#include "exhom/rng.hpp"

using namespace exhom;

namespace {

template <class F>
void check_field_axioms(const F& field, typename F::Scalar a, typename F::Scalar b,
                        typename F::Scalar c) {
    using K = typename F::Scalar;
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a + field.zero() == a);
    CHECK(a * field.one() == a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) {
        const K ai = a.inv();
        CHECK(a * ai == field.one());
    }
}

}  // namespace

TEST_CASE("primality is deterministic on small inputs") {
    CHECK(is_prime_u32(2));
    CHECK(is_prime_u32(3));
    CHECK(is_prime_u32(5));
    CHECK(is_prime_u32(4294967291u));  // largest 32-bit prime
    CHECK_FALSE(is_prime_u32(1));
    CHECK_FALSE(is_prime_u32(0));
    CHECK_FALSE(is_prime_u32(9));
    CHECK_FALSE(is_prime_u32(4294967295u));
}

TEST_CASE("field spec parsing and validation") {
    CHECK(FieldSpec::parse("q").kind == FieldSpec::Kind::rationals);
    CHECK(FieldSpec::parse("gf:7").p == 7);
    const FieldSpec f8 = FieldSpec::parse("gf:2^3");
    CHECK(f8.n == 3);
    CHECK(f8.min_poly.size() == 4);
    CHECK_THROWS_AS(FieldSpec::parse("gf:6"), FieldError);
    CHECK_THROWS_AS(FieldSpec::parse("float"), FieldError);
    CHECK_THROWS_AS(FieldSpec::gf(2, 2, {0, 0, 1}), FieldError);  // t^2 reducible
    CHECK_THROWS_AS(FieldSpec::gf(2, 2, {1, 0, 1}), FieldError);  // (t+1)^2
    CHECK_NOTHROW(FieldSpec::gf(2, 2, {1, 1, 1}));
    CHECK(FieldSpec::parse("gf:5").str() == "gf:5");
    CHECK(FieldSpec::parse("gf:3^2").str() == "gf:3^2");
}

TEST_CASE("min-poly auto-selection picks the first irreducible") {
    // for GF(4) the enumeration reaches t^2+t+1
    const FieldSpec f4 = FieldSpec::gf(2, 2);
    CHECK(f4.min_poly == std::vector<std::uint32_t>{1, 1, 1});
    // a couple of sanity degrees
    CHECK_NOTHROW(FieldSpec::gf(3, 3).validate());
    CHECK_NOTHROW(FieldSpec::gf(5, 4).validate());
    CHECK_NOTHROW(FieldSpec::gf(2, 8).validate());
}

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rat::Field F;
    const Rat x = Rat::fraction(6, -4);
    CHECK(x.str() == "-3/2");
    CHECK(F.parse("14/21").str() == "2/3");
    CHECK(F.parse("-5").str() == "-5");
    CHECK((F.parse("1/3") + F.parse("1/6")).str() == "1/2");
    CHECK_THROWS_AS(Rat(0).inv(), FieldError);

    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const Rat a = Rat::fraction(rng.range(-20, 20), rng.range(1, 9));
        const Rat b = Rat::fraction(rng.range(-20, 20), rng.range(1, 9));
        const Rat c = Rat::fraction(rng.range(-20, 20), rng.range(1, 9));
        check_field_axioms(F, a, b, c);
    }
}

TEST_CASE("prime field arithmetic") {
    Fp::Field F(7);
    CHECK(F.from_int(10).value() == 3);
    CHECK(F.from_int(-1).value() == 6);
    CHECK((F.from_int(3) * F.from_int(5)).value() == 1);
    CHECK(F.from_int(3).inv().value() == 5);
    CHECK_THROWS_AS(F.zero().inv(), FieldError);

    // literals attach on contact
    Fp lit(1);
    CHECK((lit + F.from_int(6)).value() == 0);
    CHECK((Fp(0) * F.from_int(4)).is_zero());

    // mismatched moduli must throw
    Fp::Field G(5);
    CHECK_THROWS_AS((void)(F.from_int(1) + G.from_int(1)), FieldError);

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        check_field_axioms(F, F.from_int(rng.range(0, 6)), F.from_int(rng.range(0, 6)),
                           F.from_int(rng.range(0, 6)));
    }
}

TEST_CASE("extension field arithmetic in GF(4)") {
    Fq::Field F(FieldSpec::gf(2, 2));  // min-poly t^2+t+1
    const Fq g = F.generator();
    // g^2 = g + 1
    CHECK(g * g == g + F.one());
    CHECK(g * g * g == F.one());  // multiplicative order 3
    CHECK(g.inv() == g * g);
    CHECK((g + g).is_zero());

    // Frobenius x -> x^2 is the nontrivial automorphism; applying it twice is id
    CHECK(g.frobenius(1) == g * g);
    CHECK(g.frobenius(2) == g);
    CHECK(F.one().frobenius(1) == F.one());
}

TEST_CASE("extension field axioms and inverse on random elements") {
    for (const auto& fs : {FieldSpec::gf(2, 3), FieldSpec::gf(3, 2), FieldSpec::gf(5, 2)}) {
        Fq::Field F(fs);
        Rng rng(fs.p * 100 + fs.n);
        for (int i = 0; i < 40; ++i) {
            auto rand_elt = [&] {
                std::vector<std::uint32_t> c(fs.n);
                for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(fs.p));
                return F.element(c);
            };
            check_field_axioms(F, rand_elt(), rand_elt(), rand_elt());
        }
        // applying Frobenius n times over GF(p^n) is the identity
        for (int i = 0; i < 10; ++i) {
            std::vector<std::uint32_t> c(fs.n);
            for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(fs.p));
            const Fq a = F.element(c);
            CHECK(a.frobenius(fs.n) == a);
        }
    }
}

TEST_CASE("scalar string round trips") {
    Rat::Field Q;
    CHECK(Q.parse(Q.str(Rat::fraction(-7, 3))) == Rat::fraction(-7, 3));
    Fp::Field F5(5);
    CHECK(F5.parse("3") == F5.from_int(3));
    Fq::Field F8(FieldSpec::gf(2, 3));
    const Fq a = F8.element({1, 0, 1});
    CHECK(a.str() == "1+0*t+1*t^2");
    CHECK(F8.parse(a.str()) == a);
    CHECK(F8.parse("1") == F8.one());
}

TEST_CASE("eigen interop: products and blocks over exact scalars") {
    // rationals
    {
        Rat::Field F;
        Mat<Rat> a = zeros<Rat>(F, 2, 2);
        a(0, 0) = Rat(1); a(0, 1) = Rat::fraction(1, 2);
        a(1, 0) = Rat(0); a(1, 1) = Rat(1);
        Mat<Rat> b = a * a;
        CHECK(b(0, 1) == Rat(1));
        CHECK(mat_eq<Rat>(a * eye<Rat>(F, 2), a));
    }
    // prime field: matrix products through Eigen's generic path
    {
        Fp::Field F(5);
        Mat<Fp> a = zeros<Fp>(F, 3, 3);
        for (Index i = 0; i < 3; ++i)
            for (Index j = 0; j < 3; ++j) a(i, j) = F.from_int(i + 2 * j + 1);
        Mat<Fp> prod = a * a;
        // spot check one entry: sum_k a(0,k)*a(k,0)
        Fp expect = F.zero();
        for (Index k = 0; k < 3; ++k) expect += a(0, k) * a(k, 0);
        CHECK(prod(0, 0) == expect);
        Mat<Fp> s = a + a;
        CHECK(s(1, 1) == a(1, 1) * F.from_int(2));
        CHECK(is_zero_mat<Fp>(a - a));
    }
    // extension field
    {
        Fq::Field F(FieldSpec::gf(2, 2));
        Mat<Fq> a = zeros<Fq>(F, 2, 2);
        a(0, 0) = F.generator(); a(0, 1) = F.one();
        a(1, 1) = F.generator();
        Mat<Fq> sq = a * a;
        CHECK(sq(0, 0) == F.generator() * F.generator());
        CHECK(sq(0, 1) == F.generator() + F.generator());  // g*1 + 1*g = 0
        CHECK(sq(0, 1).is_zero());
    }
}
