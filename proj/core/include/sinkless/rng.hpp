#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace sinkless {

// All randomness in the library flows from one user seed through keyed
// streams: stream_u64(seed, {tag, index, ...}) is a pure function, so every
// artifact is reproducible from its RunConfig. Mixing is splitmix64, which is
// more than adequate for simulation randomness.

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Derive a 64-bit value from a seed and a key path. Keys distinguish
// purposes (subsystem tag) and indices (node, phase, sample, ...).
inline uint64_t stream_u64(uint64_t seed, std::initializer_list<uint64_t> keys) {
    uint64_t h = splitmix64(seed ^ 0x5851f42d4c957f2dull);
    for (uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x9e3779b97f4a7c15ull));
    return h;
}

// Stream tags, one per consumer, so streams never collide across subsystems.
namespace rng_tag {
inline constexpr uint64_t tape = 1;
inline constexpr uint64_t matching = 2;
inline constexpr uint64_t luby = 3;
inline constexpr uint64_t mt_init = 4;
inline constexpr uint64_t mt_resample = 5;
inline constexpr uint64_t mc_sample = 6;
inline constexpr uint64_t table = 7;
} // namespace rng_tag

// Uniform integer in [0, n) without modulo bias worth worrying about at
// simulation scale; n is tiny (< 2^32) everywhere we use this.
inline uint64_t stream_below(uint64_t seed, std::initializer_list<uint64_t> keys, uint64_t n) {
    return stream_u64(seed, keys) % n;
}

// Stateful splitmix stream for bulk draws (shuffles).
class SplitMix {
public:
    explicit SplitMix(uint64_t state) : state_(state) {}
    uint64_t next() { return splitmix64(state_ += 0x9e3779b97f4a7c15ull); }
    uint64_t below(uint64_t n) { return next() % n; }

private:
    uint64_t state_;
};

// Portable Fisher-Yates; std::shuffle is implementation-defined, which would
// break bit-exact regeneration of artifacts across toolchains.
template <class T>
void deterministic_shuffle(std::vector<T>& v, SplitMix& rng) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

} // namespace sinkless
