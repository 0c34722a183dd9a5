#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dhk/geometry/domain.hpp"

namespace dhk::characteristics
{
using geometry::Domain;
using geometry::Point;

enum class Classification
{
    s_q,
    s_r,
    neither,
    inconclusive,
};

std::string_view to_string(Classification c);

struct TraceEntry
{
    std::int64_t samples = 0;
    double q_inf = 0;
    double r_inf = 0;
};

/*!
 * Sampled estimates of the midpoint characteristic q (infimum over boundary
 * pairs of delta_D(mid) / delta_{H_w}(mid)) and of its segment variant r,
 * which for pairs whose midpoint is deeper than `r_level` takes the best
 * ratio over the part of the segment deeper than `r_level`.
 */
struct CharacteristicReport
{
    nlohmann::json domain;
    bool strictly_convex = false;
    std::int64_t budget = 0;
    std::uint64_t seed = 0;
    double truncation = 0;  //!< chart truncation used for unbounded domains
    double r_level = 1;
    double q_hat = 1;
    double r_hat = 1;
    std::pair<Point, Point> argmin_pair;    //!< minimizer of q
    std::pair<Point, Point> r_argmin_pair;  //!< minimizer of r
    std::int64_t samples = 0;  //!< pair evaluations, refinement included
    std::int64_t skipped = 0;  //!< pairs with no well-defined ratio
    std::vector<TraceEntry> refinement_trace;
    Classification classification = Classification::inconclusive;
    double threshold = 0.02;

    nlohmann::ordered_json to_json() const;
};

struct EstimateOptions
{
    std::int64_t budget = 100000;  //!< sampled pairs, at least 1000
    std::uint64_t seed = 1;
    double r_level = 1;
    //! Chart truncation for unbounded domains; 0 selects
    //! 10 max(1, domain scale).
    double truncation = 0;
    //! Worker threads; 0 reads DHK_THREADS.
    int threads = 0;
};

//! Pairs are drawn in chunks of this size, each from its own stream.
inline constexpr std::int64_t kChunkPairs = 1024;

/*!
 * delta_D / delta_{H_w} at (1 - k/grid) w + (k/grid) z for k = 1..grid; the
 * last entry is the ratio at z. Throws std::invalid_argument for w = z,
 * points off the boundary or grid < 2, and std::domain_error if the tangent
 * at w is not unique or z lies on the tangent hyperplane at w.
 */
std::vector<double> ratio_profile(Domain const& d, Point const& w,
                                  Point const& z, int grid);

//! Estimates q and r on one sample set at a single chart truncation.
CharacteristicReport estimate(Domain const& d, EstimateOptions const& opt);

CharacteristicReport qd_estimate(Domain const& d, std::int64_t budget,
                                 std::uint64_t seed);

//! For unbounded domains the truncation doubles, from its default, until
//! r_hat changes by less than 5% (at most five doublings).
CharacteristicReport rd_estimate(Domain const& d, std::int64_t budget,
                                 std::uint64_t seed);

/*!
 * Classification from reports of one domain at increasing budgets. A value
 * is stable when it changes by less than 5% between the smallest and the
 * largest budget. Throws std::invalid_argument for fewer than two reports or
 * reports of different domains.
 */
Classification classify(Domain const& d, double threshold,
                        std::vector<CharacteristicReport> const& reports);

//! rd_estimate at `budget` and 4 * budget, classified; returns the larger
//! run with its classification set.
CharacteristicReport characterize(Domain const& d, std::int64_t budget,
                                  std::uint64_t seed, double threshold = 0.02);

}  // namespace dhk::characteristics
