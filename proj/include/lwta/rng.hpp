#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lwta {

/// Seeded random stream. Copies continue independently from the same state,
/// which is how latent draws are frozen and replayed.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double uniform();
    double normal();
    std::size_t below(std::size_t n);

    /// Named sub-stream; depends only on (seed, name), not on draws made so far.
    RngStream derive(std::string_view name) const;
    RngStream derive(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace lwta
