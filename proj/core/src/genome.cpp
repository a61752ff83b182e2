#include "paramctl/genome.hpp"

#include <stdexcept>

namespace paramctl {

int hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

BitString random_bitstring(int n, RandomSource& rng) {
    BitString x(static_cast<std::size_t>(n));
    for (auto& bit : x) bit = rng.next_bool() ? 1 : 0;
    return x;
}

IntString random_intstring(int n, int alphabet_size, RandomSource& rng) {
    IntString x(static_cast<std::size_t>(n));
    for (auto& v : x)
        v = static_cast<std::int32_t>(rng.next_below(static_cast<std::uint64_t>(alphabet_size)));
    return x;
}

} // namespace paramctl
