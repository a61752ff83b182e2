#pragma once

#include <span>
#include <vector>

#include "paramctl/genome.hpp"
#include "paramctl/rng.hpp"

namespace paramctl {

// Flip-set samplers. Run loops work with flip index sets so offspring need
// not be materialized unless they are accepted; the BitString operators
// below share these samplers, so both paths draw identical distributions.

/// Index set of a k-bit flip: k distinct positions, uniform over all
/// k-subsets of [0, n). Throws std::invalid_argument unless 0 <= k <= n.
void sample_flip_k(int n, int k, RandomSource& rng, std::vector<int>& flips);

/// Index set of standard bit mutation: every position independently with
/// probability p (drawn as an exact binomial count plus a uniform subset).
void sample_standard_mutation(int n, double p, RandomSource& rng, std::vector<int>& flips);

/// Two positions i, j drawn independently and uniformly; flipping i then j.
/// With probability 1/n the draws collide and the flip set is empty.
void sample_two_bit_with_replacement(int n, RandomSource& rng, std::vector<int>& flips);

/// Subset of `positions` keeping each element independently with
/// probability c (used for biased crossover restricted to disagreement
/// positions).
void sample_biased_subset(std::span<const int> positions, double c, RandomSource& rng,
                          std::vector<int>& out);

// Whole-string operators.

/// Flips exactly k distinct random bits.
BitString flip_k_distinct(const BitString& x, int k, RandomSource& rng);

/// Flips each bit independently with probability p.
BitString standard_bit_mutation(const BitString& x, double p, RandomSource& rng);

/// The with-replacement 2-bit variant: result equals x with probability 1/n,
/// otherwise has Hamming distance exactly 2.
BitString two_bit_flip_with_replacement(const BitString& x, RandomSource& rng);

/// Biased uniform crossover: bit i is taken from `other` with probability c,
/// from `x` otherwise, independently per position.
BitString biased_uniform_crossover(const BitString& x, const BitString& other, double c,
                                   RandomSource& rng);

/// Boundary handling for integer components. Interval-metric modes clamp to
/// [0, r-1]; the ring metric wraps modulo r.
enum class BoundaryMode { Clamp, Wrap };

/// Candidate value for moving coordinate `current` by +/- step under the
/// given boundary mode (step >= 1).
std::int32_t step_component(std::int32_t current, int step, bool up, int alphabet_size,
                            BoundaryMode mode);

/// Replaces x[index] by x[index] - floor(v) with probability 1/2 and by
/// x[index] + floor(v) otherwise; all other coordinates untouched.
IntString component_step(const IntString& x, int index, double velocity, int alphabet_size,
                         BoundaryMode mode, RandomSource& rng);

} // namespace paramctl
