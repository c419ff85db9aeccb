#include "exhom/combinatorics.hpp"

namespace exhom {

YSeq y_sequence(unsigned n) {
    if (n > 24) throw FieldError("y_sequence: refusing to materialise above n = 24");
    YSeq y{0, {0}};
    for (unsigned i = 0; i < n; ++i) {
        std::vector<std::uint8_t> next;
        next.reserve(y.entries.size() * 2);
        for (std::uint8_t e : y.entries) next.push_back(static_cast<std::uint8_t>(e + 1));
        next.insert(next.end(), y.entries.begin(), y.entries.end());
        y.entries = std::move(next);
        y.n = i + 1;
    }
    return y;
}

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (n > 62) throw FieldError("binomial: out of the supported range");
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact at every step
    }
    return r;
}

std::uint64_t occurrence_count(unsigned k, unsigned n) {
    if (n > 24) return binomial(n, k);
    const YSeq y = y_sequence(n);
    std::uint64_t count = 0;
    for (std::uint8_t e : y.entries) count += (e == k) ? 1 : 0;
    return count;
}

long n_chi(unsigned d) {
    if (d < 1) throw FieldError("n_chi: d must be >= 1");
    long s = 0;
    for (unsigned k = 0; k < d; ++k) {
        const long term = static_cast<long>(occurrence_count(k, d - 1));
        s += (k % 2 == 0) ? term : -term;
    }
    return s;
}

long n_chi_via_complexes(unsigned d) {
    if (d < 1) throw FieldError("n_chi_via_complexes: d must be >= 1");
    Fp::Field F(2);
    Cplx<Fp> c = Cplx<Fp>::concentrated(F, 0, 1);
    for (unsigned i = 1; i < d; ++i) c = direct_sum<Fp>({c, shift(c, -1)});
    return euler_char(c);
}

}  // namespace exhom
