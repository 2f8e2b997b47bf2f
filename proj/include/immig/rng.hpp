#pragma once

#include <cstdint>
#include <random>

namespace immig {

/// Identifies the random substream a result was drawn from.
struct SeedInfo {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
    std::uint64_t replica = 0;
};

/// Named stream tags so that independent parts of an experiment never share draws.
namespace streams {
inline constexpr std::uint64_t walk = 1;
inline constexpr std::uint64_t window = 2;
inline constexpr std::uint64_t pairs = 3;
inline constexpr std::uint64_t size_biased = 4;
inline constexpr std::uint64_t tail = 5;
inline constexpr std::uint64_t permutation = 6;
inline constexpr std::uint64_t perpetuity = 7;
inline constexpr std::uint64_t diagnostic = 8;
inline constexpr std::uint64_t floor = 16;  // floor pairs use floor + 2*i, floor + 2*i + 1
}  // namespace streams

/// Random stream over mt19937_64.
///
/// Substreams are derived by feeding (master, stream, replica) through
/// std::seed_seq, whose mixing algorithm and the engine are both fixed by the
/// standard, so a given triple yields the same draws on every conforming
/// platform. All variates are produced by inversion from uniform(), never by
/// std::*_distribution, whose algorithms are implementation-defined.
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : Rng(SeedInfo{seed, 0, 0}) {}

    explicit Rng(SeedInfo info) : info_(info) {
        std::seed_seq seq{static_cast<std::uint32_t>(info.master),
                          static_cast<std::uint32_t>(info.master >> 32),
                          static_cast<std::uint32_t>(info.stream),
                          static_cast<std::uint32_t>(info.stream >> 32),
                          static_cast<std::uint32_t>(info.replica),
                          static_cast<std::uint32_t>(info.replica >> 32)};
        engine_.seed(seq);
    }

    static Rng substream(std::uint64_t master, std::uint64_t stream, std::uint64_t replica) {
        return Rng(SeedInfo{master, stream, replica});
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    result_type operator()() { return engine_(); }
    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

    const SeedInfo& info() const { return info_; }

  private:
    SeedInfo info_;
    std::mt19937_64 engine_;
};

}  // namespace immig
