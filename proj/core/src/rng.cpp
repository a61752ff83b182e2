#include "paramctl/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace paramctl {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

RandomSource::RandomSource(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
    std::uint64_t s = master_seed;
    (void)splitmix64(s);
    s ^= 0xD1B54A32D192ED03ULL * (stream_id + 1);
    mixed_seed_ = splitmix64(s);
    engine_.seed(mixed_seed_);
}

std::uint64_t RandomSource::next_u64() { return engine_(); }

double RandomSource::next_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

int RandomSource::next_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("next_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<int>(next_below(span));
}

bool RandomSource::next_bool() { return (next_u64() >> 63) != 0; }

bool RandomSource::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return next_real() < p;
}

int RandomSource::binomial(int n, double p) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial: p must be in [0,1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    if (p > 0.5) return n - binomial(n, 1.0 - p);
    if (static_cast<double>(n) * p <= 30.0) return binomial_inverse_transform(n, p);
    return binomial_geometric_jumps(n, p);
}

int RandomSource::binomial_inverse_transform(int n, double p) {
    const double q = 1.0 - p;
    const double ratio = p / q;
    double pmf = std::pow(q, n);
    double cdf = pmf;
    const double u = next_real();
    int k = 0;
    while (u >= cdf && k < n) {
        pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        ++k;
        cdf += pmf;
    }
    return k;
}

// Counts how many geometric(p) inter-arrival gaps fit into n trials.
// Exact for any p in (0, 1/2]; expected cost O(np).
int RandomSource::binomial_geometric_jumps(int n, double p) {
    const double log_q = std::log1p(-p);
    int count = 0;
    long long position = 0;
    for (;;) {
        const double u = 1.0 - next_real(); // in (0, 1]
        const double jump = std::floor(std::log(u) / log_q) + 1.0;
        if (jump > static_cast<double>(n)) return count;
        position += static_cast<long long>(jump);
        if (position > n) return count;
        ++count;
    }
}

std::vector<int> RandomSource::permutation(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
}

void RandomSource::sample_distinct(int n, int k, std::vector<int>& out) {
    if (k < 0 || k > n) throw std::invalid_argument("sample_distinct: need 0 <= k <= n");
    out.clear();
    if (k == 0) return;
    // Dense draws use a partial Fisher-Yates over a reusable index pool;
    // sparse draws use rejection with epoch-marked membership.
    if (static_cast<std::uint64_t>(k) * 4 >= static_cast<std::uint64_t>(n)) {
        if (static_cast<int>(pool_.size()) != n) {
            pool_.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) pool_[static_cast<std::size_t>(i)] = i;
        }
        for (int i = 0; i < k; ++i) {
            const int j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool_[static_cast<std::size_t>(i)], pool_[static_cast<std::size_t>(j)]);
            out.push_back(pool_[static_cast<std::size_t>(i)]);
        }
        return;
    }
    if (static_cast<int>(mark_.size()) < n) mark_.resize(static_cast<std::size_t>(n), 0);
    ++epoch_;
    if (epoch_ == 0) { // counter wrapped; reset marks
        std::fill(mark_.begin(), mark_.end(), 0);
        epoch_ = 1;
    }
    while (static_cast<int>(out.size()) < k) {
        const int i = static_cast<int>(next_below(static_cast<std::uint64_t>(n)));
        if (mark_[static_cast<std::size_t>(i)] == epoch_) continue;
        mark_[static_cast<std::size_t>(i)] = epoch_;
        out.push_back(i);
    }
}

} // namespace paramctl
