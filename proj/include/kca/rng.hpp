#ifndef KCA_RNG_HPP
#define KCA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace kca {

// Counter-based generator: the output sequence is a pure function of
// (seed, stream), identical on every platform and independent of how work
// is scheduled across threads. Parallel trials take stream = trial index
// and get non-overlapping sequences without coordination.
class SeededRng {
public:
    SeededRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {
        key_ = mix(mix(seed + 0x9E3779B97F4A7C15ULL) ^
                   (stream * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL));
    }

    std::uint64_t next_u64() {
        counter_ += 0x9E3779B97F4A7C15ULL;
        return mix(key_ + counter_);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, ..., bound-1}, unbiased (multiply-shift with rejection).
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        while (true) {
            std::uint64_t x = next_u64();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (-bound) % bound)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    // Failures before the first success at success probability q in (0, 1].
    // Used to skip runs of absent edges when sampling sparse graphs.
    std::int64_t next_geometric_skip(double q) {
        if (q >= 1.0) { next_u64(); return 0; }
        double u = next_unit();
        long double k = std::floor(std::log1p(-static_cast<long double>(u)) /
                                   std::log1p(-static_cast<long double>(q)));
        const long double cap = 9.0e18L;
        if (!(k < cap)) return static_cast<std::int64_t>(cap);
        return static_cast<std::int64_t>(k);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_, stream_, key_, counter_ = 0;
};

}  // namespace kca

#endif
