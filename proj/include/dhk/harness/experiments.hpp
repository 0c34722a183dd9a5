#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dhk/characteristics/characteristics.hpp"
#include "dhk/geometry/domain.hpp"
#include "dhk/harness/report.hpp"

namespace dhk::harness
{
using geometry::Domain;

/*!
 * A preset run with optional overrides. Unset fields take the preset
 * defaults; the seed is always explicit in the resulting report.
 *
 * JSON form: {"name": preset, "seed": n, "paths": n, "steps": n,
 * "budget": n, "t": [...], "outputs": {"json": path, "csv": path,
 * "plotdata": path}}.
 */
struct ExperimentSpec
{
    std::string name;
    std::uint64_t seed = 1;
    std::optional<std::int64_t> paths;   //!< Monte Carlo paths per row
    std::optional<int> steps;            //!< Monte Carlo steps per path
    std::optional<std::int64_t> budget;  //!< characteristic sample pairs
    std::vector<double> t;               //!< replaces the preset time grid
    int threads = 0;
    std::string json_path;
    std::string csv_path;
    std::string plot_path;
};

std::vector<std::string> preset_names();
//! Throws std::invalid_argument on unknown keys, presets or bad values.
ExperimentSpec parse_experiment_spec(nlohmann::json const& j);

//! Runs the preset and writes every requested output.
Report run_experiment(ExperimentSpec const& spec);

// Verification suites. Each returns a report whose checks carry the verdict.

struct ExactnessOptions
{
    std::int64_t paths = 100000;
    int steps = 256;
    std::uint64_t seed = 1;
    int threads = 0;
};

//! Monte Carlo against the reflection formula on a 3 x 3 grid of
//! (t, delta / sqrt t) with delta / sqrt t in {0.2, 1, 5}, n = 2.
Report verify_halfspace_exactness(ExactnessOptions const& opt);
//! Monte Carlo against the series kernel on (0, 1) at five configurations,
//! and image against eigenfunction series at the switchover time.
Report verify_interval_exactness(ExactnessOptions const& opt);
//! Chapman-Kolmogorov residuals (20 configurations per kernel), 100 ball
//! mass and 50 two-half-space configurations.
Report verify_chapman_kolmogorov(std::uint64_t seed);
//! Ratio profiles over `pairs` random boundary pairs per catalog domain.
Report verify_ratio_profiles(int pairs, std::uint64_t seed);
//! delta_D(m) <= delta_{H_x}(m) <= (3 / q) delta_D(m) for sampled interior
//! pairs, m the midpoint.
Report verify_midpoint_comparability(Domain const& d, double q_hat,
                                     int samples, std::uint64_t seed);
//! Ratio of the two improved lower-bound forms over random catalog samples.
Report verify_lower_forms(int samples, std::uint64_t seed);
//! Estimator checks on the interval, disc, stadium, power domain and
//! ellipse.
Report verify_characteristics(std::uint64_t seed);

std::vector<std::string> suite_names();
//! Runs a named suite at its default size.
Report run_suite(std::string const& name, std::uint64_t seed);

}  // namespace dhk::harness
