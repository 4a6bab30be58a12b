#pragma once

#include <cstdint>
#include <random>

namespace uavcre {

using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of sub-stream `index` under `master`. Depends only on the pair, so
/// trial streams are identical whatever the worker count or schedule.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline RandomStream make_stream(std::uint64_t master, std::uint64_t index)
{
    return RandomStream{derive_seed(master, index)};
}

/// Uniform on (0, 1], so log(u) is always finite.
inline double uniform_open0(RandomStream& rng)
{
    return 1.0 - std::uniform_real_distribution<double>{0.0, 1.0}(rng);
}

} // namespace uavcre
