#include "paramctl/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace paramctl {

void sample_flip_k(int n, int k, RandomSource& rng, std::vector<int>& flips) {
    if (k < 0 || k > n) throw std::invalid_argument("sample_flip_k: need 0 <= k <= n");
    rng.sample_distinct(n, k, flips);
}

void sample_standard_mutation(int n, double p, RandomSource& rng, std::vector<int>& flips) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("standard_bit_mutation: p must be in [0,1]");
    const int count = rng.binomial(n, p);
    rng.sample_distinct(n, count, flips);
}

void sample_two_bit_with_replacement(int n, RandomSource& rng, std::vector<int>& flips) {
    flips.clear();
    const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    if (i == j) return; // the two flips cancel
    flips.push_back(i);
    flips.push_back(j);
}

void sample_biased_subset(std::span<const int> positions, double c, RandomSource& rng,
                          std::vector<int>& out) {
    if (c < 0.0 || c > 1.0) throw std::invalid_argument("biased crossover: c must be in [0,1]");
    out.clear();
    const int m = static_cast<int>(positions.size());
    if (m == 0) return;
    const int count = rng.binomial(m, c);
    static thread_local std::vector<int> picks;
    rng.sample_distinct(m, count, picks);
    for (int idx : picks) out.push_back(positions[static_cast<std::size_t>(idx)]);
}

BitString flip_k_distinct(const BitString& x, int k, RandomSource& rng) {
    std::vector<int> flips;
    sample_flip_k(static_cast<int>(x.size()), k, rng, flips);
    BitString y = x;
    apply_flips(y, flips);
    return y;
}

BitString standard_bit_mutation(const BitString& x, double p, RandomSource& rng) {
    std::vector<int> flips;
    sample_standard_mutation(static_cast<int>(x.size()), p, rng, flips);
    BitString y = x;
    apply_flips(y, flips);
    return y;
}

BitString two_bit_flip_with_replacement(const BitString& x, RandomSource& rng) {
    if (x.empty()) throw std::invalid_argument("two_bit_flip_with_replacement: empty string");
    std::vector<int> flips;
    sample_two_bit_with_replacement(static_cast<int>(x.size()), rng, flips);
    BitString y = x;
    apply_flips(y, flips);
    return y;
}

BitString biased_uniform_crossover(const BitString& x, const BitString& other, double c,
                                   RandomSource& rng) {
    if (x.size() != other.size())
        throw std::invalid_argument("biased_uniform_crossover: length mismatch");
    if (c < 0.0 || c > 1.0) throw std::invalid_argument("biased_uniform_crossover: c must be in [0,1]");
    BitString y = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (rng.bernoulli(c)) y[i] = other[i];
    }
    return y;
}

std::int32_t step_component(std::int32_t current, int step, bool up, int alphabet_size,
                            BoundaryMode mode) {
    long long candidate = static_cast<long long>(current) + (up ? step : -step);
    if (mode == BoundaryMode::Wrap) {
        long long m = candidate % alphabet_size;
        if (m < 0) m += alphabet_size;
        return static_cast<std::int32_t>(m);
    }
    if (candidate < 0) candidate = 0;
    if (candidate > alphabet_size - 1) candidate = alphabet_size - 1;
    return static_cast<std::int32_t>(candidate);
}

IntString component_step(const IntString& x, int index, double velocity, int alphabet_size,
                         BoundaryMode mode, RandomSource& rng) {
    if (index < 0 || index >= static_cast<int>(x.size()))
        throw std::invalid_argument("component_step: index out of range");
    const int step = static_cast<int>(std::floor(velocity));
    if (step < 1) throw std::invalid_argument("component_step: floor(velocity) must be >= 1");
    IntString y = x;
    const bool up = rng.next_bool();
    y[static_cast<std::size_t>(index)] =
        step_component(x[static_cast<std::size_t>(index)], step, up, alphabet_size, mode);
    return y;
}

} // namespace paramctl
