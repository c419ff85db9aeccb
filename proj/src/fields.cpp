#include "exhom/fields.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace exhom {

bool is_prime_u32(std::uint32_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace poly {

P trim(P a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

static P mul(const P& a, const P& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return trim(std::move(r));
}

static std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw FieldError("not invertible mod p");
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

std::pair<P, P> divmod(P a, const P& m, std::uint32_t p) {
    a = trim(std::move(a));
    const P mm = trim(m);
    if (mm.empty()) throw FieldError("polynomial modulus is zero");
    const std::size_t dm = mm.size() - 1;
    const std::uint32_t lead_inv = inv_mod(mm.back(), p);
    P q(a.size() > dm ? a.size() - dm : 0, 0);
    while (a.size() > dm) {
        const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        q[shift] = static_cast<std::uint32_t>(c);
        if (c != 0) {
            for (std::size_t i = 0; i <= dm; ++i) {
                const std::uint64_t sub = c * mm[i] % p;
                a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
            }
        }
        a.pop_back();
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return {trim(std::move(q)), std::move(a)};
}

P mod(P a, const P& m, std::uint32_t p) { return divmod(std::move(a), m, p).second; }

P mul_mod(const P& a, const P& b, const P& modulus, std::uint32_t p) {
    return mod(mul(a, b, p), modulus, p);
}

P gcd(P a, P b, std::uint32_t p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        P r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {  // make monic
        const std::uint32_t li = inv_mod(a.back(), p);
        for (auto& c : a) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * li % p);
    }
    return a;
}

P pow_p_mod(const P& a, std::uint32_t p, const P& modulus) {
    P result{1};
    P base = mod(a, modulus, p);
    std::uint32_t e = p;
    while (e > 0) {
        if (e & 1u) result = mul_mod(result, base, modulus, p);
        base = mul_mod(base, base, modulus, p);
        e >>= 1u;
    }
    return result;
}

// Rabin's test: f (monic, degree n) is irreducible over GF(p) iff
// x^(p^n) == x mod f and gcd(x^(p^(n/l)) - x, f) = 1 for every prime l | n.
bool is_irreducible(const P& monic, std::uint32_t p) {
    const P f = trim(monic);
    if (f.size() < 2) return false;
    const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
    if (n == 1) return true;

    std::vector<std::uint32_t> prime_divs;
    std::uint32_t m = n;
    for (std::uint32_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            prime_divs.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_divs.push_back(m);

    // frob[k] = x^(p^k) mod f
    P x{0, 1};
    P cur = mod(x, f, p);
    std::vector<P> frob(n + 1);
    frob[0] = cur;
    for (std::uint32_t k = 1; k <= n; ++k) {
        cur = pow_p_mod(cur, p, f);
        frob[k] = cur;
    }
    for (std::uint32_t l : prime_divs) {
        // gcd(x^(p^(n/l)) - x, f) must be trivial
        P diff = frob[n / l];
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
        diff = trim(std::move(diff));
        if (diff.empty()) return false;
        if (gcd(diff, f, p).size() > 1) return false;
    }
    // x^(p^n) == x
    P diff = frob[n];
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    return trim(std::move(diff)).empty();
}

P first_irreducible(std::uint32_t p, std::uint32_t n) {
    if (n == 0) throw FieldError("extension degree must be >= 1");
    if (n == 1) return P{0, 1};  // t
    // enumerate constant-first base-p counters over the n low coefficients
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (total > (1ull << 40) / p) throw FieldError("min-poly search space too large");
        total *= p;
    }
    for (std::uint64_t m = 0; m < total; ++m) {
        P f(n + 1, 0);
        std::uint64_t v = m;
        for (std::uint32_t i = 0; i < n; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        f[n] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw FieldError("no irreducible polynomial found");  // unreachable for n>=1
}

}  // namespace poly

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::rationals() { return FieldSpec{}; }

FieldSpec FieldSpec::gf(std::uint32_t p) {
    FieldSpec fs;
    fs.kind = Kind::prime;
    fs.p = p;
    fs.validate();
    return fs;
}

FieldSpec FieldSpec::gf(std::uint32_t p, std::uint32_t n) {
    if (!is_prime_u32(p)) throw FieldError("p is not prime: " + std::to_string(p));
    return gf(p, n, poly::first_irreducible(p, n));
}

FieldSpec FieldSpec::gf(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> min_poly) {
    FieldSpec fs;
    fs.kind = Kind::extension;
    fs.p = p;
    fs.n = n;
    fs.min_poly = std::move(min_poly);
    fs.validate();
    return fs;
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "q" || text == "Q") return rationals();
    if (text.rfind("gf:", 0) == 0) {
        const std::string body = text.substr(3);
        const auto caret = body.find('^');
        auto to_u32 = [&](const std::string& s) {
            std::uint32_t v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw FieldError("bad field spec: " + text);
            return v;
        };
        if (caret == std::string::npos) return gf(to_u32(body));
        return gf(to_u32(body.substr(0, caret)), to_u32(body.substr(caret + 1)));
    }
    throw FieldError("bad field spec: " + text + " (expected q, gf:p or gf:p^n)");
}

std::string FieldSpec::str() const {
    switch (kind) {
        case Kind::rationals: return "q";
        case Kind::prime: return "gf:" + std::to_string(p);
        case Kind::extension:
            return "gf:" + std::to_string(p) + "^" + std::to_string(n);
    }
    return "?";
}

void FieldSpec::validate() const {
    if (kind == Kind::rationals) return;
    if (!is_prime_u32(p)) throw FieldError("p is not prime: " + std::to_string(p));
    if (kind == Kind::prime) return;
    if (n < 1 || n > 8) throw FieldError("extension degree out of range (1..8)");
    if (min_poly.size() != n + 1) throw FieldError("min-poly must have degree n");
    if (min_poly.back() != 1) throw FieldError("min-poly must be monic");
    for (auto c : min_poly)
        if (c >= p) throw FieldError("min-poly coefficient out of range");
    if (!poly::is_irreducible(min_poly, p))
        throw FieldError("min-poly is reducible over GF(p)");
}

// ---------------------------------------------------------------------------
// Rat

Rat Rat::fraction(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw FieldError("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(q);
}

Rat Rat::inv() const {
    if (is_zero()) throw FieldError("division by zero");
    return Rat(mpq_class(1 / v_));
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw FieldError("division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::Field::parse(const std::string& s) const {
    if (s.empty()) throw FieldError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw FieldError("bad rational literal: " + s);
    q.canonicalize();
    return Rat(q);
}

// ---------------------------------------------------------------------------
// Fp

void Fp::unify(Fp& a, Fp& b) {
    if (a.p_ == b.p_) return;
    if (a.p_ == 0) { a = Fp(b.p_, a.v_); return; }
    if (b.p_ == 0) { b = Fp(a.p_, b.v_); return; }
    throw FieldError("prime field mismatch: GF(" + std::to_string(a.p_) + ") vs GF(" +
                     std::to_string(b.p_) + ")");
}

Fp operator+(Fp a, Fp b) {
    Fp::unify(a, b);
    if (a.p_ == 0) return Fp(a.v_ + b.v_);
    return Fp(a.p_, a.v_ + b.v_);
}

Fp operator-(Fp a, Fp b) {
    Fp::unify(a, b);
    if (a.p_ == 0) return Fp(a.v_ - b.v_);
    return Fp(a.p_, a.v_ - b.v_);
}

Fp operator*(Fp a, Fp b) {
    Fp::unify(a, b);
    if (a.p_ == 0) {
        const __int128 prod = static_cast<__int128>(a.v_) * b.v_;
        if (prod > INT64_MAX || prod < INT64_MIN) throw FieldError("literal overflow");
        return Fp(static_cast<std::int64_t>(prod));
    }
    return Fp(a.p_, static_cast<std::int64_t>(
                        static_cast<std::uint64_t>(a.v_) * static_cast<std::uint64_t>(b.v_) %
                        a.p_));
}

Fp Fp::operator-() const {
    if (p_ == 0) return Fp(-v_);
    return Fp(p_, -v_);
}

bool operator==(Fp a, Fp b) {
    Fp::unify(a, b);
    return a.v_ == b.v_;
}

Fp Fp::inv() const {
    if (p_ == 0) {
        if (v_ == 1 || v_ == -1) return *this;
        throw FieldError("cannot invert unattached literal");
    }
    if (v_ == 0) throw FieldError("division by zero in GF(p)");
    std::int64_t t = 0, nt = 1, r = p_, nr = v_;
    while (nr != 0) {
        const std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return Fp(p_, t);
}

Fp Fp::pow(std::uint64_t e) const {
    if (p_ == 0) throw FieldError("pow on unattached literal");
    Fp result(p_, 1);
    Fp base = *this;
    while (e > 0) {
        if (e & 1ull) result *= base;
        base *= base;
        e >>= 1ull;
    }
    return result;
}

Fp::Field::Field(std::uint32_t prime) : p(prime) {
    if (!is_prime_u32(p)) throw FieldError("p is not prime: " + std::to_string(p));
}

Fp::Field::Field(const FieldSpec& fs) {
    if (fs.kind != FieldSpec::Kind::prime) throw FieldError("FieldSpec is not a prime field");
    fs.validate();
    p = fs.p;
}

Fp Fp::Field::parse(const std::string& s) const {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw FieldError("bad GF(p) literal: " + s);
    return Fp(p, v);
}

// ---------------------------------------------------------------------------
// Fq

Fq::Fq(std::shared_ptr<const FqCtx> ctx, std::vector<std::uint32_t> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (!ctx_) throw FieldError("null extension-field context");
    c_.resize(ctx_->n, 0);
    for (auto& c : c_) c %= ctx_->p;
}

void Fq::attach(const std::shared_ptr<const FqCtx>& ctx) {
    if (ctx_) return;
    const std::int64_t v = lit_;
    ctx_ = ctx;
    c_.assign(ctx->n, 0);
    std::int64_t r = v % static_cast<std::int64_t>(ctx->p);
    if (r < 0) r += ctx->p;
    if (!c_.empty()) c_[0] = static_cast<std::uint32_t>(r);
    lit_ = 0;
}

void Fq::unify(Fq& a, Fq& b) {
    if (a.ctx_ && b.ctx_) {
        if (a.ctx_ != b.ctx_ && !a.ctx_->same(*b.ctx_))
            throw FieldError("extension field mismatch");
        return;
    }
    if (a.ctx_) { b.attach(a.ctx_); return; }
    if (b.ctx_) { a.attach(b.ctx_); return; }
}

bool Fq::is_zero() const {
    if (!ctx_) return lit_ == 0;
    return std::all_of(c_.begin(), c_.end(), [](std::uint32_t c) { return c == 0; });
}

Fq operator+(Fq a, Fq b) {
    Fq::unify(a, b);
    if (!a.ctx_) return Fq(a.lit_ + b.lit_);
    Fq r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = (r.c_[i] + b.c_[i]) % a.ctx_->p;
    return r;
}

Fq operator-(Fq a, Fq b) {
    Fq::unify(a, b);
    if (!a.ctx_) return Fq(a.lit_ - b.lit_);
    Fq r = a;
    const std::uint32_t p = a.ctx_->p;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = (r.c_[i] + p - b.c_[i]) % p;
    return r;
}

Fq operator*(Fq a, Fq b) {
    Fq::unify(a, b);
    if (!a.ctx_) {
        const __int128 prod = static_cast<__int128>(a.lit_) * b.lit_;
        if (prod > INT64_MAX || prod < INT64_MIN) throw FieldError("literal overflow");
        return Fq(static_cast<std::int64_t>(prod));
    }
    const auto& ctx = *a.ctx_;
    poly::P prod = poly::mul_mod(poly::trim(a.c_), poly::trim(b.c_), ctx.min_poly, ctx.p);
    prod.resize(ctx.n, 0);
    Fq r = a;
    r.c_ = std::move(prod);
    return r;
}

Fq Fq::operator-() const {
    if (!ctx_) return Fq(-lit_);
    Fq r = *this;
    for (auto& c : r.c_) c = c == 0 ? 0 : ctx_->p - c;
    return r;
}

bool operator==(const Fq& a, const Fq& b) {
    Fq x = a, y = b;
    Fq::unify(x, y);
    if (!x.ctx_) return x.lit_ == y.lit_;
    return x.c_ == y.c_;
}

Fq Fq::inv() const {
    if (!ctx_) {
        if (lit_ == 1 || lit_ == -1) return *this;
        throw FieldError("cannot invert unattached literal");
    }
    if (is_zero()) throw FieldError("division by zero in GF(p^n)");
    const std::uint32_t p = ctx_->p;
    auto sub_scaled = [p](poly::P a, const poly::P& q, const poly::P& b) {
        // a - q*b
        if (!q.empty() && !b.empty()) {
            poly::P qb(q.size() + b.size() - 1, 0);
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    qb[i + j] = static_cast<std::uint32_t>(
                        (qb[i + j] + static_cast<std::uint64_t>(q[i]) * b[j]) % p);
            a.resize(std::max(a.size(), qb.size()), 0);
            for (std::size_t i = 0; i < qb.size(); ++i) a[i] = (a[i] + p - qb[i]) % p;
        }
        return poly::trim(std::move(a));
    };
    poly::P r0 = ctx_->min_poly, r1 = poly::trim(c_);
    poly::P s0 = {}, s1 = {1};
    while (!r1.empty()) {
        auto [q, rem] = poly::divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        poly::P ns = sub_scaled(s0, q, s1);
        s0 = std::move(s1);
        s1 = std::move(ns);
    }
    if (r0.size() != 1) throw FieldError("inverse failed: reducible modulus?");
    // scale Bezout coefficient by gcd^{-1}
    std::int64_t t = 0, nt = 1, rr = p, nr = r0[0];
    while (nr != 0) { const std::int64_t q = rr / nr; std::swap(t -= q * nt, nt); std::swap(rr -= q * nr, nr); }
    const std::uint32_t scale = static_cast<std::uint32_t>(t < 0 ? t + p : t);
    poly::P res = s0;
    for (auto& c : res) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * scale % p);
    res = poly::mod(std::move(res), ctx_->min_poly, p);
    res.resize(ctx_->n, 0);
    Fq out = *this;
    out.c_ = std::move(res);
    return out;
}

Fq Fq::frobenius(std::uint32_t power) const {
    if (!ctx_) {
        if (power == 0) return *this;
        throw FieldError("frobenius on unattached literal");
    }
    Fq r = *this;
    for (std::uint32_t k = 0; k < power % ctx_->n; ++k) {
        poly::P rp = poly::pow_p_mod(poly::trim(r.c_), ctx_->p, ctx_->min_poly);
        rp.resize(ctx_->n, 0);
        r.c_ = std::move(rp);
    }
    return r;
}

std::string Fq::str() const {
    if (!ctx_) return std::to_string(lit_);
    std::ostringstream os;
    for (std::uint32_t i = 0; i < ctx_->n; ++i) {
        if (i > 0) os << "+";
        os << c_[i];
        if (i == 1) os << "*t";
        if (i > 1) os << "*t^" << i;
    }
    return os.str();
}

Fq::Field::Field(const FieldSpec& fs) {
    if (fs.kind != FieldSpec::Kind::extension)
        throw FieldError("FieldSpec is not an extension field");
    fs.validate();
    ctx = std::make_shared<FqCtx>(FqCtx{fs.p, fs.n, fs.min_poly});
}

FieldSpec Fq::Field::spec() const {
    if (!ctx) throw FieldError("empty extension field");
    return FieldSpec::gf(ctx->p, ctx->n, ctx->min_poly);
}

Fq Fq::Field::element(std::vector<std::uint32_t> coeffs) const {
    if (!ctx) throw FieldError("empty extension field");
    return Fq(ctx, std::move(coeffs));
}

Fq Fq::Field::from_int(long v) const {
    if (!ctx) throw FieldError("empty extension field");
    std::int64_t r = v % static_cast<std::int64_t>(ctx->p);
    if (r < 0) r += ctx->p;
    return element({static_cast<std::uint32_t>(r)});
}

Fq Fq::Field::parse(const std::string& s) const {
    if (!ctx) throw FieldError("empty extension field");
    // accepted: "c0+c1*t+c2*t^2+..." with every term present, or a bare integer
    std::vector<std::uint32_t> coeffs(ctx->n, 0);
    std::size_t pos = 0, term = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('+', pos);
        if (next == std::string::npos) next = s.size();
        std::string tok = s.substr(pos, next - pos);
        const auto star = tok.find('*');
        std::string num = star == std::string::npos ? tok : tok.substr(0, star);
        std::size_t deg = term;
        if (star != std::string::npos) {
            const std::string tpart = tok.substr(star + 1);
            if (tpart == "t") deg = 1;
            else if (tpart.rfind("t^", 0) == 0) deg = std::stoul(tpart.substr(2));
            else throw FieldError("bad GF(p^n) literal: " + s);
        }
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
        if (ec != std::errc{} || ptr != num.data() + num.size())
            throw FieldError("bad GF(p^n) literal: " + s);
        if (deg >= coeffs.size()) throw FieldError("term degree out of range: " + s);
        std::int64_t r = v % static_cast<std::int64_t>(ctx->p);
        if (r < 0) r += ctx->p;
        coeffs[deg] = static_cast<std::uint32_t>(r);
        pos = next + 1;
        ++term;
    }
    return element(std::move(coeffs));
}

}  // namespace exhom
