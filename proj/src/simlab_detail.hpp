#pragma once

// Pieces shared by the OpenMP kernels and the serial reference loops.

#include "eqmargin/random_stream.hpp"
#include "eqmargin/simlab.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace eqmargin::detail {

// Margins that would be nonpositive are clamped here.
inline constexpr double kMinMargin = 1e-12;

inline std::uint64_t margin_stream_id(std::size_t grid_index, long rep) {
    return (static_cast<std::uint64_t>(grid_index) << 32) | static_cast<std::uint64_t>(rep);
}
inline std::uint64_t fer_stream_id(long rep) {
    return (std::uint64_t{1} << 63) | static_cast<std::uint64_t>(rep);
}
inline std::uint64_t replication_stream_id(long rep) {
    return (std::uint64_t{1} << 62) | static_cast<std::uint64_t>(rep);
}

/// Fills `out` with Normal(mean, 1) draws.
inline void draw_arm(RandomStream& stream, double mean, std::span<double> out) {
    for (double& x : out) x = sample_normal(stream, mean, 1.0);
}

/// Per-replication outcomes of one grid point, indexed by replication.
struct MarginRepOutcomes {
    std::vector<double> f_of_x;
    std::vector<double> delta;
    std::vector<std::uint8_t> reject;
    std::vector<std::uint8_t> null_true;

    explicit MarginRepOutcomes(std::size_t reps)
        : f_of_x(reps), delta(reps), reject(reps), null_true(reps) {}
};

SimPointResult finalize_point(double p, const MarginRepOutcomes& outcomes);

FerEstimate finalize_fer(const FerConfig& cfg, std::span<const std::uint8_t> reject,
                         std::span<const std::uint8_t> null_true);

ReplicationResult finalize_replication(std::span<const std::uint8_t> success);

}  // namespace eqmargin::detail
