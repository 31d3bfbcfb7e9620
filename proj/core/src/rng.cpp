#include "dppmc/rng.hpp"

#include <bit>

namespace dppmc {

RngStream::RngStream(std::uint64_t seed) noexcept : RngStream(seed, std::span<const std::uint64_t>{}) {}

RngStream::RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept
    : RngStream(seed, std::span<const std::uint64_t>(path.begin(), path.size())) {}

RngStream::RngStream(std::uint64_t seed, std::span<const std::uint64_t> path) noexcept {
    id_ = mix_path(seed, path);
    seed_state(id_);
}

std::uint64_t RngStream::mix_path(std::uint64_t seed, std::span<const std::uint64_t> path) noexcept {
    std::uint64_t h = SplitMix64(seed)();
    for (std::uint64_t id : path) {
        // Chain through SplitMix64 so (a, b) and (b, a) give different keys.
        h = SplitMix64(h ^ SplitMix64(id + 0x632BE59BD9B4E019ULL)())();
    }
    return h;
}

void RngStream::seed_state(std::uint64_t key) noexcept {
    SplitMix64 sm(key);
    for (auto& w : s_) w = sm();
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RngStream::result_type RngStream::operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double RngStream::uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() noexcept {
    // (k + 0.5) / 2^53 for k in [0, 2^53): never 0 or 1.
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

RngStream RngStream::derive(std::uint64_t id) const noexcept {
    const std::uint64_t p[1] = {id};
    RngStream child(0);
    child.id_ = mix_path(id_, p);
    child.seed_state(child.id_);
    return child;
}

}  // namespace dppmc
