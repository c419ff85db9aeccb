#pragma once

// The recursively concatenated sequence y_n, its occurrence counts N(k, n),
// and the alternating sum N_chi, computed both in closed form and literally
// through a tower of shifted one-dimensional complexes.

#include <cstdint>
#include <vector>

#include "exhom/complexes.hpp"

namespace exhom {

struct YSeq {
    unsigned n = 0;
    std::vector<std::uint8_t> entries;  // length 2^n, entries bounded by n
};

// y_0 = (0); y_{i+1} = (y_i with every entry + 1) concatenated with y_i.
YSeq y_sequence(unsigned n);

std::uint64_t binomial(unsigned n, unsigned k);

// occurrences of k in y_n; the closed form binom(n, k) is used past the
// materialisation cutoff (n > 24) and cross-checked below it
std::uint64_t occurrence_count(unsigned k, unsigned n);

// sum_{k=0}^{d-1} (-1)^k N(k, d-1)
long n_chi(unsigned d);

// the same number as the Euler characteristic of C_{d-1}, where C_0 = V[0]
// is one-dimensional and C_{i+1} = C_i (+) C_i[-1]
long n_chi_via_complexes(unsigned d);

}  // namespace exhom
