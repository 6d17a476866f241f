#include "eqmargin/random_stream.hpp"

#include "eqmargin/errors.hpp"

#include <cmath>
#include <limits>

namespace eqmargin {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Steele, Lea & Flood).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t key = mix64(seed + kGolden) ^ mix64(mix64(stream_id) + 0x6A09E667F3BCC909ULL);
    for (auto& word : state_) {
        key += kGolden;
        word = mix64(key);
    }
    // xoshiro must not start from the all-zero state.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

double sample_normal(RandomStream& stream, double mu, double sd) {
    if (!(sd > 0.0) || !std::isfinite(sd)) throw DomainError("sample_normal: sd must be positive");
    return mu + sd * stream.standard_normal();
}

double sample_half_normal_below(RandomStream& stream, double bound, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("sample_half_normal_below: scale must be positive");
    }
    const double value = bound - scale * std::fabs(stream.standard_normal());
    if (value >= bound) return std::nextafter(bound, -std::numeric_limits<double>::infinity());
    return value;
}

bool sample_bernoulli(RandomStream& stream, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sample_bernoulli: p must lie in [0, 1]");
    return stream.uniform() < p;
}

}  // namespace eqmargin
