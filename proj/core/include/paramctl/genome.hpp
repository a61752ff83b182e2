#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paramctl/rng.hpp"

namespace paramctl {

/// Fixed-length string over {0,1}. Length is fixed for the lifetime of a run.
using BitString = std::vector<std::uint8_t>;

/// Fixed-length string over [0..r-1] for the r-valued OneMax family.
using IntString = std::vector<std::int32_t>;

/// Individual extended with the parameter value it carries (mutation-rate
/// numerator, real rate, ...), used by self-adaptive algorithms.
struct TaggedIndividual {
    BitString genotype;
    double tag = 0.0;
};

int hamming_distance(const BitString& a, const BitString& b);

BitString random_bitstring(int n, RandomSource& rng);
IntString random_intstring(int n, int alphabet_size, RandomSource& rng);

inline void apply_flips(BitString& x, std::span<const int> flips) {
    for (int q : flips) x[static_cast<std::size_t>(q)] ^= 1u;
}

} // namespace paramctl
