#include "dhk/geometry/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace dhk::geometry
{
namespace
{
struct KindName
{
    DomainKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {DomainKind::box, "box"},
    {DomainKind::ball, "ball"},
    {DomainKind::halfspace, "halfspace"},
    {DomainKind::wedge, "wedge"},
    {DomainKind::half_capsule, "half_capsule"},
    {DomainKind::power_domain, "power_domain"},
    {DomainKind::stadium, "stadium"},
    {DomainKind::ellipse, "ellipse"},
};
}  // namespace

std::string_view to_string(DomainKind kind)
{
    for (auto const& kn : kKindNames)
        if (kn.kind == kind)
            return kn.name;
    throw std::invalid_argument("unknown domain kind");
}

DomainKind domain_kind_from_string(std::string_view name)
{
    for (auto const& kn : kKindNames)
        if (kn.name == name)
            return kn.kind;
    throw std::invalid_argument("unknown domain kind '" + std::string(name)
                                + "'");
}

HalfSpace Shape::tangent_at(Point const& w) const
{
    return project(w).tangent;
}

Domain::Domain(DomainKind kind, nlohmann::json params,
               std::shared_ptr<Shape const> shape, Metadata meta)
    : kind_{kind},
      params_(std::move(params)),
      shape_{std::move(shape)},
      meta_{meta},
      dim_{shape_->dim()}
{
}

nlohmann::json Domain::to_json() const
{
    return {{"kind", std::string(to_string(kind_))}, {"params", params_}};
}

void Domain::require_dim(Point const& x) const
{
    if (x.dim() != dim_)
    {
        throw std::invalid_argument("point has dimension "
                                    + std::to_string(x.dim())
                                    + ", domain has dimension "
                                    + std::to_string(dim_));
    }
}

void Domain::require_closure(Point const& x) const
{
    require_dim(x);
    if (!in_closure(x))
        throw std::domain_error("point " + format_point(x)
                                + " lies outside the domain");
}

bool Domain::contains(Point const& x) const
{
    require_dim(x);
    return shape_->contains(x);
}

bool Domain::in_closure(Point const& x) const
{
    require_dim(x);
    return shape_->contains(x)
           || shape_->signed_distance(x) >= -boundary_tolerance();
}

bool Domain::on_boundary(Point const& x) const
{
    require_dim(x);
    return std::abs(shape_->signed_distance(x)) <= boundary_tolerance();
}

double Domain::distance(Point const& x) const
{
    require_closure(x);
    if (!shape_->contains(x))
        return 0.0;
    return shape_->distance(x);
}

Projection Domain::project(Point const& x) const
{
    require_closure(x);
    Projection p = shape_->project(x);
    if (!shape_->contains(x))
        p.distance = 0.0;
    return p;
}

HalfSpace Domain::supporting_halfspace(Point const& x) const
{
    require_closure(x);
    if (on_boundary(x))
        return shape_->tangent_at(x);
    return shape_->project(x).tangent;
}

double Domain::segment_distance(Point const& x, Point const& y) const
{
    return std::min(distance(x), distance(y));
}

std::vector<ChartAxis> Domain::boundary_chart(double truncation) const
{
    return shape_->boundary_chart(truncation);
}

Point Domain::boundary_point(std::span<double const> u) const
{
    auto axes = shape_->boundary_chart(1.0);
    if (u.size() != axes.size())
        throw std::invalid_argument("boundary chart expects "
                                    + std::to_string(axes.size())
                                    + " coordinates");
    return shape_->boundary_point(u);
}

AxisBox Domain::sampling_box(double truncation) const
{
    return shape_->sampling_box(truncation);
}

Point direction_from_angles(std::span<double const> angles, int n)
{
    Point v(n);
    if (n == 1)
    {
        v[0] = std::cos(angles[0]) >= 0 ? 1.0 : -1.0;
        return v;
    }
    double s = 1;
    for (int i = 0; i < n - 1; ++i)
    {
        v[i] = s * std::cos(angles[i]);
        s *= std::sin(angles[i]);
    }
    v[n - 1] = s;
    return v;
}

}  // namespace dhk::geometry
