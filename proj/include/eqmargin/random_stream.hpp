#pragma once

#include <array>
#include <cstdint>

namespace eqmargin {

/// Seeded, splittable source of random variates.
///
/// The generator is xoshiro256** (Blackman & Vigna). Its 256-bit state is
/// filled by SplitMix64 from a key that mixes `seed` and `stream_id` with the
/// SplitMix64 finalizer, so every (seed, stream_id) pair names its own
/// sequence and no state is shared between streams. Only integer arithmetic
/// is used to produce the raw bits, so sequences are identical across
/// platforms and across worker counts.
///
/// A stream is single-owner: do not share one between threads.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal variate (Marsaglia polar method; pairs are cached).
    double standard_normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

double sample_normal(RandomStream& stream, double mu, double sd);

/// Returns bound - |z| with z ~ Normal(0, scale^2). The result is strictly
/// below bound; when scale * |z| is below the resolution of bound the next
/// representable value below bound is returned.
double sample_half_normal_below(RandomStream& stream, double bound, double scale);

bool sample_bernoulli(RandomStream& stream, double p);

}  // namespace eqmargin
