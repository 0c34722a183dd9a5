#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dhk/bounds/bounds.hpp"
#include "dhk/geometry/point.hpp"
#include "dhk/oracle/monte_carlo.hpp"

namespace dhk::harness
{
using geometry::Point;

struct Ratio
{
    std::string name;
    std::string numerator;    //!< name of a row value
    std::string denominator;  //!< name of a row value
    double value = 0;
};

/*!
 * One configuration of an experiment. Named values hold every number the
 * ratios are built from, so each ratio recomputes from its row.
 */
struct Row
{
    std::string label;
    double t = 0;
    std::optional<Point> x;
    std::optional<Point> y;
    std::vector<std::pair<std::string, double>> values;
    std::vector<Ratio> ratios;
    std::vector<bounds::BoundBreakdown> bounds;
    std::optional<oracle::McEstimate> oracle;

    void set(std::string const& name, double v);
    double value(std::string_view name) const;
    //! Adds the bound and its value under the bound kind name.
    void add_bound(bounds::BoundBreakdown const& b);
    //! Adds the estimate with values "oracle" and "oracle_stderr".
    void add_oracle(oracle::McEstimate const& est);
    //! Adds numerator / denominator; both must already be set.
    double add_ratio(std::string const& name, std::string const& numerator,
                     std::string const& denominator);
};

struct Check
{
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Series
{
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct Report
{
    std::string name;
    std::uint64_t seed = 0;
    double wall_clock_ceiling_s = 0;
    std::vector<Row> rows;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    std::vector<Series> plots;
    nlohmann::ordered_json attachments = nlohmann::ordered_json::object();

    bool pass() const;
    void summarize(std::string const& name, double v);
    double summary_value(std::string_view name) const;
    void check(std::string const& name, bool pass, std::string detail = {});
    nlohmann::ordered_json to_json() const;
};

//! Largest relative deviation between a stored ratio and its recomputation.
double ratio_recompute_error(Report const& r);

//! Serializes with floats printed as %.12e; the output depends only on the
//! value, so equal reports give equal bytes.
std::string dump_json(nlohmann::ordered_json const& j, int indent = 2);

enum class ReportFormat
{
    json,
    csv,
    plotdata,
};

std::string emit_report(Report const& r, ReportFormat format);
//! Throws std::runtime_error when the file cannot be written.
void write_report(Report const& r, ReportFormat format, std::string const& path);

std::string format_double(double v);

}  // namespace dhk::harness
