#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace levyid {

/// Seeded random stream. Every (seed, stream_id) pair, plus any chain of
/// derive() calls, maps to its own Mersenne-Twister state through
/// std::seed_seq, so sibling streams are decorrelated.
///
/// A stream is not thread-safe; give each worker its own.
class RngStream {
public:
    using engine_type = std::mt19937_64;

    explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Child stream keyed by `child`; depends only on this stream's identity,
    /// never on how many variates were drawn from it.
    RngStream derive(std::uint64_t child) const;

    double uniform();                  // [0, 1)
    double uniform_open_angle();       // (-pi/2, pi/2)
    double exponential();              // Exp(1)
    double normal();                   // N(0, 1)

    engine_type& engine() noexcept { return engine_; }

private:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::vector<std::uint32_t> path);
    void reseed();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::vector<std::uint32_t> path_;
    engine_type engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace levyid
