#pragma once

// Exact field arithmetic: rationals (GMP-backed), prime fields GF(p) and
// extension fields GF(p^n) with runtime moduli.  Scalars are self-describing:
// each element carries its field so that mixing fields is detected at the
// first arithmetic contact.  Default-constructed or integer-initialised
// scalars are "literals" that adopt the field of whatever they first meet;
// Eigen's Zero()/Identity() produce such literals.

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace exhom {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// deterministic for 32-bit inputs
bool is_prime_u32(std::uint32_t p);

namespace poly {
// Dense polynomials over GF(p), coefficients ascending, no trailing zeros
// enforced by the callers that need it.
using P = std::vector<std::uint32_t>;
P trim(P a);
P mul_mod(const P& a, const P& b, const P& modulus, std::uint32_t p);
P mod(P a, const P& m, std::uint32_t p);
std::pair<P, P> divmod(P a, const P& m, std::uint32_t p);
P gcd(P a, P b, std::uint32_t p);
P pow_p_mod(const P& a, std::uint32_t p, const P& modulus);  // a^p mod modulus
bool is_irreducible(const P& monic, std::uint32_t p);
P first_irreducible(std::uint32_t p, std::uint32_t n);  // monic, degree n
}  // namespace poly

// ---------------------------------------------------------------------------
// FieldSpec: runtime description of a field, with validation.

struct FieldSpec {
    enum class Kind { rationals, prime, extension };

    Kind kind = Kind::rationals;
    std::uint32_t p = 0;
    std::uint32_t n = 1;
    std::vector<std::uint32_t> min_poly;  // monic, size n+1, extension only

    static FieldSpec rationals();
    static FieldSpec gf(std::uint32_t p);
    static FieldSpec gf(std::uint32_t p, std::uint32_t n);  // auto min-poly
    static FieldSpec gf(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> min_poly);

    // grammar: "q" | "gf:p" | "gf:p^n"
    static FieldSpec parse(const std::string& text);
    std::string str() const;

    void validate() const;  // throws FieldError
    bool operator==(const FieldSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Rationals.

class Rat {
  public:
    struct Field;

    Rat() = default;
    Rat(long v) : v_(v) {}  // NOLINT: implicit wanted, Eigen builds Scalar(0)
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Rat fraction(const mpz_class& num, const mpz_class& den);

    bool is_zero() const { return sgn(v_) == 0; }
    Rat inv() const;

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }

    const mpq_class& raw() const { return v_; }
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

  private:
    mpq_class v_;
};

struct Rat::Field {
    using Scalar = Rat;
    FieldSpec spec() const { return FieldSpec::rationals(); }
    Rat zero() const { return Rat(); }
    Rat one() const { return Rat(1); }
    Rat from_int(long v) const { return Rat(v); }
    Rat parse(const std::string& s) const;
    std::string str(const Rat& x) const { return x.str(); }
    bool owns(const Rat&) const { return true; }
    bool operator==(const Field&) const { return true; }
};

// ---------------------------------------------------------------------------
// Prime field GF(p).  p_ == 0 marks an integer literal not yet attached to a
// field; such values appear only via default/int construction.

class Fp {
  public:
    struct Field;

    Fp() = default;
    Fp(long v) : v_(v) {}  // NOLINT: implicit literal
    Fp(std::uint32_t p, std::int64_t v) : v_(reduce(v, p)), p_(p) {}

    std::uint32_t modulus() const { return p_; }
    std::int64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Fp inv() const;
    Fp pow(std::uint64_t e) const;
    Fp frobenius(std::uint32_t power) const { return *this; }  // identity on GF(p)

    friend Fp operator+(Fp a, Fp b);
    friend Fp operator-(Fp a, Fp b);
    friend Fp operator*(Fp a, Fp b);
    friend Fp operator/(Fp a, const Fp& b) { return a * b.inv(); }
    Fp operator-() const;
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }
    friend bool operator==(Fp a, Fp b);
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }

    std::string str() const { return std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.str(); }

  private:
    static std::int64_t reduce(std::int64_t v, std::uint32_t p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        return r < 0 ? r + p : r;
    }
    static void unify(Fp& a, Fp& b);

    std::int64_t v_ = 0;
    std::uint32_t p_ = 0;
};

struct Fp::Field {
    using Scalar = Fp;
    std::uint32_t p = 0;

    Field() = default;
    explicit Field(std::uint32_t prime);
    explicit Field(const FieldSpec& fs);

    FieldSpec spec() const { return FieldSpec::gf(p); }
    Fp zero() const { return Fp(p, 0); }
    Fp one() const { return Fp(p, 1); }
    Fp from_int(long v) const { return Fp(p, v); }
    Fp parse(const std::string& s) const;
    std::string str(const Fp& x) const { return x.str(); }
    bool owns(const Fp& x) const { return x.modulus() == 0 || x.modulus() == p; }
    bool operator==(const Field& o) const { return p == o.p; }
};

// ---------------------------------------------------------------------------
// Extension field GF(p^n) = GF(p)[t]/(min_poly).

struct FqCtx {
    std::uint32_t p;
    std::uint32_t n;
    std::vector<std::uint32_t> min_poly;  // monic, size n+1

    bool same(const FqCtx& o) const {
        return p == o.p && n == o.n && min_poly == o.min_poly;
    }
};

class Fq {
  public:
    struct Field;

    Fq() = default;
    Fq(long v) : lit_(v) {}  // NOLINT: implicit literal
    Fq(std::shared_ptr<const FqCtx> ctx, std::vector<std::uint32_t> coeffs);

    bool attached() const { return ctx_ != nullptr; }
    const std::shared_ptr<const FqCtx>& ctx() const { return ctx_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    bool is_zero() const;

    Fq inv() const;
    Fq frobenius(std::uint32_t power) const;  // x -> x^(p^power)

    friend Fq operator+(Fq a, Fq b);
    friend Fq operator-(Fq a, Fq b);
    friend Fq operator*(Fq a, Fq b);
    friend Fq operator/(Fq a, const Fq& b) { return a * b.inv(); }
    Fq operator-() const;
    Fq& operator+=(const Fq& o) { *this = *this + o; return *this; }
    Fq& operator-=(const Fq& o) { *this = *this - o; return *this; }
    Fq& operator*=(const Fq& o) { *this = *this * o; return *this; }
    friend bool operator==(const Fq& a, const Fq& b);
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Fq& x) { return os << x.str(); }

  private:
    static void unify(Fq& a, Fq& b);
    void attach(const std::shared_ptr<const FqCtx>& ctx);

    std::shared_ptr<const FqCtx> ctx_;
    std::vector<std::uint32_t> c_;  // size ctx_->n when attached
    std::int64_t lit_ = 0;          // meaningful only when detached
};

struct Fq::Field {
    using Scalar = Fq;
    std::shared_ptr<const FqCtx> ctx;

    Field() = default;
    explicit Field(const FieldSpec& fs);

    FieldSpec spec() const;
    Fq zero() const { return element({}); }
    Fq one() const { return element({1}); }
    Fq from_int(long v) const;
    Fq element(std::vector<std::uint32_t> coeffs) const;  // low-degree coeffs
    Fq generator() const { return element({0, 1}); }
    Fq parse(const std::string& s) const;
    std::string str(const Fq& x) const { return x.str(); }
    bool owns(const Fq& x) const { return !x.attached() || x.ctx()->same(*ctx); }
    bool operator==(const Field& o) const {
        if (!ctx || !o.ctx) return static_cast<bool>(ctx) == static_cast<bool>(o.ctx);
        return ctx->same(*o.ctx);
    }
};

// ---------------------------------------------------------------------------
// Dispatch a FieldSpec to the statically typed field it denotes.

template <class Fn>
decltype(auto) with_field(const FieldSpec& fs, Fn&& fn) {
    switch (fs.kind) {
        case FieldSpec::Kind::rationals:
            return fn(Rat::Field{});
        case FieldSpec::Kind::prime:
            return fn(Fp::Field{fs});
        case FieldSpec::Kind::extension:
            return fn(Fq::Field{fs});
    }
    throw FieldError("corrupt FieldSpec");
}

template <class K>
struct is_extension_scalar : std::false_type {};
template <>
struct is_extension_scalar<Fq> : std::true_type {};

}  // namespace exhom

// ---------------------------------------------------------------------------
// Eigen scalar traits.

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<exhom::Rat> {
    using Real = exhom::Rat;
    using NonInteger = exhom::Rat;
    using Literal = exhom::Rat;
    using Nested = exhom::Rat;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 32,
    };
    static exhom::Rat epsilon() { return exhom::Rat(0); }
    static exhom::Rat dummy_precision() { return exhom::Rat(0); }
    static int digits10() { return 0; }
};

template <>
struct NumTraits<exhom::Fp> {
    using Real = exhom::Fp;
    using NonInteger = exhom::Fp;
    using Literal = exhom::Fp;
    using Nested = exhom::Fp;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 4,
        MulCost = 8,
    };
    static exhom::Fp epsilon() { return exhom::Fp(0); }
    static exhom::Fp dummy_precision() { return exhom::Fp(0); }
    static int digits10() { return 0; }
};

template <>
struct NumTraits<exhom::Fq> {
    using Real = exhom::Fq;
    using NonInteger = exhom::Fq;
    using Literal = exhom::Fq;
    using Nested = exhom::Fq;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 16,
        MulCost = 64,
    };
    static exhom::Fq epsilon() { return exhom::Fq(0); }
    static exhom::Fq dummy_precision() { return exhom::Fq(0); }
    static int digits10() { return 0; }
};

}  // namespace Eigen
