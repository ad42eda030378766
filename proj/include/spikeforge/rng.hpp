#pragma once

#include <cstdint>

namespace spikeforge {

// splitmix64 finalizer; bijective on 64-bit values.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream keyed by (seed, stream id, optional sub-ids).
///
/// Draw i of a stream depends only on the key and i, so independent streams
/// never perturb each other and any draw can be recomputed in isolation.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t sub0 = 0, std::uint64_t sub1 = 0) noexcept {
        std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
        k = mix64(k ^ stream);
        k = mix64(k ^ sub0);
        key_ = mix64(k ^ sub1);
    }

    std::uint64_t u64_at(std::uint64_t index) const noexcept {
        return mix64(key_ + index * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform double in [0, 1).
    double unit_at(std::uint64_t index) const noexcept {
        return static_cast<double>(u64_at(index) >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below_at(std::uint64_t index, std::uint64_t n) const noexcept {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(u64_at(index)) * n) >> 64);
    }

private:
    std::uint64_t key_;
};

/// Sequential view over a RandomStream, for consumers that draw a variable
/// number of values (e.g. one agent in one simulation step).
class SequentialRng {
public:
    explicit SequentialRng(RandomStream stream) noexcept : stream_(stream) {}

    std::uint64_t next_u64() noexcept { return stream_.u64_at(index_++); }
    double next_unit() noexcept { return stream_.unit_at(index_++); }
    std::uint64_t next_below(std::uint64_t n) noexcept { return stream_.below_at(index_++, n); }

private:
    RandomStream stream_;
    std::uint64_t index_ = 0;
};

} // namespace spikeforge
