#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace cyclo {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw;
// "Parallel random numbers: as easy as 1, 2, 3", SC'11).  A 128-bit counter
// is bijectively scrambled under a 64-bit key, so draws addressed by
// (seed; trial, coordinate, slot) form independent streams whose values do
// not depend on evaluation order or thread scheduling.
namespace philox {

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> block(std::uint64_t key,
                                          std::array<std::uint32_t, 4> ctr) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return ctr;
}

}  // namespace philox

// Keyed draws for one Monte-Carlo trial.  Every call is a pure function of
// (seed, trial, coord, slot); trials and coordinates are independent streams.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t trial) : seed_(seed), trial_(trial) {}

    std::pair<std::uint64_t, std::uint64_t> raw_pair(std::uint32_t coord,
                                                     std::uint32_t slot) const {
        const auto w = philox::block(
            seed_, {static_cast<std::uint32_t>(trial_),
                    static_cast<std::uint32_t>(trial_ >> 32), coord, slot});
        return {(static_cast<std::uint64_t>(w[1]) << 32) | w[0],
                (static_cast<std::uint64_t>(w[3]) << 32) | w[2]};
    }

    // Uniform in (0, 1] -- safe under log().
    double uniform01(std::uint32_t coord, std::uint32_t slot) const {
        return to_open01(raw_pair(coord, slot).first);
    }

    // Two independent standard normals via Box-Muller.
    std::pair<double, double> normal_pair(std::uint32_t coord, std::uint32_t slot) const {
        const auto [a, b] = raw_pair(coord, slot);
        const double radius = std::sqrt(-2.0 * std::log(to_open01(a)));
        const double angle = 2.0 * kPi * to_half_open01(b);
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    // Uniform integer in [lo, hi] by rejection; consumes slots slot0, slot0+1, ...
    long long uniform_int(long long lo, long long hi, std::uint32_t coord,
                          std::uint32_t slot0) const {
        const std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t reject_below = (0 - width) % width;
        for (std::uint32_t slot = slot0;; ++slot) {
            const auto [a, b] = raw_pair(coord, slot);
            if (a >= reject_below) return lo + static_cast<long long>(a % width);
            if (b >= reject_below) return lo + static_cast<long long>(b % width);
        }
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    static double to_open01(std::uint64_t x) {
        return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
    }
    static double to_half_open01(std::uint64_t x) {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed_;
    std::uint64_t trial_;
};

}  // namespace cyclo
