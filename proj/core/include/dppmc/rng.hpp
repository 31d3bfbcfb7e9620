#pragma once

// Seedable, splittable random streams. A stream is identified by a root seed and a
// path of integer ids (e.g. {d, N, replicate}); streams with different paths are
// statistically independent and do not depend on the order in which they are created.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>

namespace dppmc {

// SplitMix64 (Steele, Lea, Flood). Used for seeding and for hashing stream paths.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
    std::uint64_t operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// xoshiro256++ with a derive() operation for child streams.
// Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) noexcept;
    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;
    RngStream(std::uint64_t seed, std::span<const std::uint64_t> path) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    // Uniform on the open interval (0, 1).
    double uniform_open() noexcept;

    // Child stream keyed by this stream's identity and `id`; does not advance this stream.
    [[nodiscard]] RngStream derive(std::uint64_t id) const noexcept;

    // 64-bit identifier of the stream path, stable across runs.
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return id_; }

private:
    static std::uint64_t mix_path(std::uint64_t seed, std::span<const std::uint64_t> path) noexcept;
    void seed_state(std::uint64_t key) noexcept;

    std::array<std::uint64_t, 4> s_{};
    std::uint64_t id_ = 0;
};

}  // namespace dppmc
