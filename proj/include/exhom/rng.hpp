#pragma once

#include <cstdint>

namespace exhom {

// splitmix64; used instead of <random> distributions so that seeded reports
// are byte-identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), unbiased
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    Rng fork(std::uint64_t stream) const {
        Rng r(s_ ^ (0xd1342543de82ef95ull * (stream + 1)));
        r.next();
        return r;
    }

  private:
    std::uint64_t s_;
};

}  // namespace exhom
