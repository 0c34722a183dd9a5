#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "dhk/bounds/bounds.hpp"
#include "dhk/geometry/domain.hpp"

namespace dhk::oracle
{
using geometry::Domain;
using geometry::Point;

enum class BiasNote
{
    upper_biased,
    unbiased_limit,
};

std::string_view to_string(BiasNote note);

struct McEstimate
{
    double mean = 0;
    double std_error = 0;
    std::int64_t paths = 0;
    int steps = 0;
    std::uint64_t seed = 0;
    BiasNote bias = BiasNote::upper_biased;

    nlohmann::ordered_json to_json() const;
};

struct McOptions
{
    int steps = 256;  //!< power of two, at least 2
    std::int64_t paths = 100000;
    std::uint64_t seed = 1;
    //! Worker threads; 0 reads DHK_THREADS, falling back to the hardware
    //! concurrency.
    int threads = 0;
    //! Report progress on standard error.
    bool progress = false;
};

//! Paths are reduced in fixed-size chunks, in chunk order.
inline constexpr std::int64_t kChunkPaths = 4096;

int resolve_threads(int requested);

/*!
 * Probability that a Brownian bridge from x to y over [0, t] stays in D.
 *
 * Bridges advance with per-coordinate variance 2 dt per step. A path dies if
 * a step endpoint leaves D; otherwise each step survives with weight
 * 1 - exp(-a b / dt), a and b the distances of the step endpoints to the
 * supporting half-space at the projection of the endpoint nearer to the
 * boundary. The weight is exact for a half-space and over-estimates the step
 * survival for any other convex D. Each path draws from its own stream keyed
 * by (seed, path index), so results do not depend on the thread count.
 */
McEstimate bridge_survival(Domain const& d, double t, Point const& x,
                           Point const& y, McOptions const& opt);

//! gauss_kernel(t, x, y) * bridge_survival; the error is scaled alike.
McEstimate mc_kernel(Domain const& d, double t, Point const& x,
                     Point const& y, McOptions const& opt);

bounds::KernelSource mc_kernel_source(Domain d, McOptions opt);

//! Closed-form kernel for boxes, intervals and half-spaces.
std::optional<bounds::KernelSource> exact_kernel_source(Domain const& d);

}  // namespace dhk::oracle
