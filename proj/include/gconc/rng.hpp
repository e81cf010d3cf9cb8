#pragma once

#include <array>
#include <cstdint>

namespace gconc {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is identified by (seed, stream_id). The seed keys the generator,
/// the stream id occupies the high counter words, and the draw position is the
/// low counter words, so every (seed, stream_id) pair yields the same sequence
/// from a fresh copy and distinct stream ids give statistically independent
/// sequences. Streams are cheap values: sampling routines take them by value
/// and always start from position zero, which makes results reproducible for
/// any worker count as long as parallel tasks use distinct stream ids.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Derives an independent child stream. Children with distinct indices
    /// (and grandchildren along distinct paths) do not collide in practice;
    /// the id space is mixed with splitmix64.
    RngStream substream(std::uint64_t index) const;

    std::uint64_t next_u64();

    /// Uniform double in (0, 1].
    double uniform01();

    /// Standard normal via Box-Muller (trigonometric form, no rejection).
    double normal();

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;  // empty
    double spare_normal_ = 0.0;
    bool have_spare_ = false;
};

/// splitmix64 mixing step, used to spread stream ids.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gconc
