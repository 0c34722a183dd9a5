#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dhk/geometry/halfspace.hpp"
#include "dhk/geometry/point.hpp"

namespace dhk::geometry
{
enum class DomainKind
{
    box,  //!< interval in one dimension
    ball,
    halfspace,
    wedge,  //!< intersection of two half-spaces
    half_capsule,
    power_domain,
    stadium,
    ellipse,
};

std::string_view to_string(DomainKind kind);
DomainKind domain_kind_from_string(std::string_view name);

//! Nearest boundary point, its distance, and the supporting half-space there.
struct Projection
{
    Point point;
    double distance = 0;
    HalfSpace tangent;
};

//! Sampling range of one boundary-chart coordinate.
struct ChartAxis
{
    double lo = 0;
    double hi = 0;
};

struct AxisBox
{
    Point lo;
    Point hi;
};

/*!
 * Geometry of one convex body.
 *
 * project() must accept interior points and points within rounding distance
 * outside the body; tangent_at() takes a boundary point and throws where the
 * tangent hyperplane is not unique. boundary_point() maps chart coordinates
 * (any real values) onto the boundary continuously.
 */
class Shape
{
  public:
    virtual ~Shape() = default;

    virtual int dim() const = 0;
    virtual bool contains(Point const& x) const = 0;
    //! Positive inside, negative outside; exact inside the body.
    virtual double signed_distance(Point const& x) const = 0;
    virtual Projection project(Point const& x) const = 0;
    virtual double distance(Point const& x) const { return project(x).distance; }
    virtual HalfSpace tangent_at(Point const& w) const;

    virtual std::vector<ChartAxis> boundary_chart(double truncation) const = 0;
    virtual Point boundary_point(std::span<double const> u) const = 0;
    virtual AxisBox sampling_box(double truncation) const = 0;
    //! Characteristic length used to scale tolerances.
    virtual double scale() const = 0;
};

/*!
 * Immutable handle to a catalog convex domain.
 *
 * All queries are const and safe to call concurrently. Points are validated
 * against the domain dimension; queries that require a point of the closure
 * throw std::domain_error for points outside it.
 */
class Domain
{
  public:
    struct Metadata
    {
        double inner_ball_radius = 0;
        bool strictly_convex = false;
        bool bounded = false;
    };

    Domain(DomainKind kind, nlohmann::json params,
           std::shared_ptr<Shape const> shape, Metadata meta);

    DomainKind kind() const noexcept { return kind_; }
    nlohmann::json const& params() const noexcept { return params_; }
    //! {"kind": ..., "params": {...}}
    nlohmann::json to_json() const;

    int dim() const noexcept { return dim_; }
    double inner_ball_radius() const noexcept { return meta_.inner_ball_radius; }
    bool strictly_convex() const noexcept { return meta_.strictly_convex; }
    bool bounded() const noexcept { return meta_.bounded; }
    double scale() const { return shape_->scale(); }

    //! Membership in the open set.
    bool contains(Point const& x) const;
    //! Whether x lies in the closure, up to the boundary tolerance.
    bool in_closure(Point const& x) const;
    bool on_boundary(Point const& x) const;
    double boundary_tolerance() const { return 1e-10 * scale(); }

    double distance(Point const& x) const;
    Projection project(Point const& x) const;
    //! H with D inside H and delta_H(x) = delta_D(x); for boundary points the
    //! tangent half-space there.
    HalfSpace supporting_halfspace(Point const& x) const;

    //! Distance from the segment [x, y] to the boundary. The distance
    //! function is concave on a convex body, so this is the smaller endpoint
    //! distance.
    double segment_distance(Point const& x, Point const& y) const;

    std::vector<ChartAxis> boundary_chart(double truncation) const;
    Point boundary_point(std::span<double const> u) const;
    AxisBox sampling_box(double truncation) const;

    Shape const& shape() const noexcept { return *shape_; }

  private:
    void require_dim(Point const& x) const;
    void require_closure(Point const& x) const;

    DomainKind kind_;
    nlohmann::json params_;
    std::shared_ptr<Shape const> shape_;
    Metadata meta_;
    int dim_;
};

//! Unit vector from hyperspherical angles; n - 1 angles give a point of
//! the (n-1)-sphere. For n = 1 the sign of cos(angle) selects -1 or +1.
Point direction_from_angles(std::span<double const> angles, int n);

}  // namespace dhk::geometry
