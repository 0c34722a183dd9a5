#include "dhk/geometry/catalog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "shapes.hpp"

namespace dhk::geometry
{
namespace
{
using nlohmann::json;

void require(bool ok, std::string const& what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

json coords(Point const& p) { return p.to_vector(); }

json halfspace_json(HalfSpace const& h)
{
    return json::object({{"normal", coords(h.normal())}, {"offset", h.offset()}});
}

Point point_param(json const& params, char const* key)
{
    require(params.contains(key) && params[key].is_array(),
            std::string("missing array parameter '") + key + "'");
    return Point::from(params[key].get<std::vector<double>>());
}

double number_param(json const& params, char const* key)
{
    require(params.contains(key) && params[key].is_number(),
            std::string("missing numeric parameter '") + key + "'");
    return params[key].get<double>();
}

double number_param(json const& params, char const* key, double fallback)
{
    return params.contains(key) ? number_param(params, key) : fallback;
}

HalfSpace halfspace_param(json const& params, char const* normal,
                          char const* offset)
{
    return {point_param(params, normal), number_param(params, offset)};
}

}  // namespace

Domain make_interval(double a, double b)
{
    return make_box(Point{a}, Point{b});
}

Domain make_box(Point lo, Point hi)
{
    lo.require_same_dim(hi);
    for (int i = 0; i < lo.dim(); ++i)
        require(lo[i] < hi[i], "box requires lo < hi in every coordinate");
    Domain::Metadata meta;
    meta.bounded = true;
    if (lo.dim() == 1)
    {
        meta.inner_ball_radius = 0.5 * (hi[0] - lo[0]);
        meta.strictly_convex = true;
    }
    return {DomainKind::box,
            json::object({{"lo", coords(lo)}, {"hi", coords(hi)}}),
            detail::box_shape(lo, hi),
            meta};
}

Domain make_ball(Point center, double radius)
{
    require(radius > 0 && std::isfinite(radius), "ball radius must be positive");
    return {DomainKind::ball,
            json::object({{"center", coords(center)}, {"radius", radius}}),
            detail::ball_shape(center, radius),
            {radius, true, true}};
}

Domain make_unit_ball(int n) { return make_ball(Point(n), 1.0); }

Domain make_halfspace(HalfSpace h)
{
    require(h.dim() >= 1, "half-space needs a normal");
    return {DomainKind::halfspace, halfspace_json(h), detail::halfspace_shape(h),
            {std::numeric_limits<double>::infinity(), false, false}};
}

Domain make_wedge(HalfSpace h1, HalfSpace h2)
{
    h1.normal().require_same_dim(h2.normal());
    require(h1.dim() >= 2, "wedge needs dimension at least 2");
    json params = json::object({{"normal1", coords(h1.normal())},
                   {"offset1", h1.offset()},
                   {"normal2", coords(h2.normal())},
                   {"offset2", h2.offset()}});
    return {DomainKind::wedge, params, detail::wedge_shape(h1, h2),
            {0.0, false, false}};
}

Domain make_half_capsule(double radius, double length, int n)
{
    require(radius > 0, "half-capsule requires R > 0");
    require(length >= radius, "half-capsule requires L >= R");
    require(n >= 2 && n <= kMaxDim, "half-capsule dimension out of range");
    return {DomainKind::half_capsule,
            json::object({{"R", radius}, {"L", length}, {"n", n}}),
            detail::half_capsule_shape(radius, length, n),
            {radius, false, true}};
}

Domain make_power_domain(double a, double p, int n)
{
    require(a > 0, "power domain requires a > 0");
    require(p >= 2, "power domain requires p >= 2");
    require(n >= 2 && n <= kMaxDim, "power domain requires n >= 2");
    double r = 1 / detail::power_max_curvature(a, p, n);
    return {DomainKind::power_domain,
            json::object({{"a", a}, {"p", p}, {"n", n}}),
            detail::power_shape(a, p, n),
            {r, true, false}};
}

Domain make_stadium(double half_length, double radius)
{
    require(half_length >= 0, "stadium half-length must be non-negative");
    require(radius > 0, "stadium radius must be positive");
    return {DomainKind::stadium,
            json::object({{"half_length", half_length}, {"radius", radius}}),
            detail::stadium_shape(half_length, radius),
            {radius, half_length == 0, true}};
}

Domain make_ellipse(double a, double b)
{
    require(a > 0 && b > 0, "ellipse semi-axes must be positive");
    double lo = std::min(a, b);
    double hi = std::max(a, b);
    return {DomainKind::ellipse, json::object({{"a", a}, {"b", b}}),
            detail::ellipse_shape(a, b), {lo * lo / hi, true, true}};
}

Domain make_domain(nlohmann::json const& spec)
{
    require(spec.is_object() && spec.contains("kind")
                && spec["kind"].is_string(),
            "domain spec needs a string 'kind'");
    std::string kind = spec["kind"].get<std::string>();
    json params = spec.value("params", json::object());
    require(params.is_object(), "domain 'params' must be an object");
    if (kind == "interval")
        return make_interval(number_param(params, "a"),
                             number_param(params, "b"));
    switch (domain_kind_from_string(kind))
    {
    case DomainKind::box:
        return make_box(point_param(params, "lo"), point_param(params, "hi"));
    case DomainKind::ball:
        if (!params.contains("center"))
        {
            int n = static_cast<int>(number_param(params, "n", 2));
            return make_ball(Point(n), number_param(params, "radius", 1.0));
        }
        return make_ball(point_param(params, "center"),
                         number_param(params, "radius", 1.0));
    case DomainKind::halfspace:
        return make_halfspace(halfspace_param(params, "normal", "offset"));
    case DomainKind::wedge:
        return make_wedge(halfspace_param(params, "normal1", "offset1"),
                          halfspace_param(params, "normal2", "offset2"));
    case DomainKind::half_capsule:
        return make_half_capsule(number_param(params, "R"),
                                 number_param(params, "L"),
                                 static_cast<int>(number_param(params, "n", 2)));
    case DomainKind::power_domain:
        return make_power_domain(number_param(params, "a"),
                                 number_param(params, "p"),
                                 static_cast<int>(number_param(params, "n", 2)));
    case DomainKind::stadium:
        return make_stadium(number_param(params, "half_length", 1.0),
                            number_param(params, "radius", 1.0));
    case DomainKind::ellipse:
        return make_ellipse(number_param(params, "a"),
                            number_param(params, "b"));
    }
    throw std::invalid_argument("unknown domain kind '" + kind + "'");
}

Domain make_named_domain(std::string const& name, int n)
{
    if (name == "ball")
        return make_unit_ball(n);
    if (name == "interval")
        return make_interval(0, 1);
    if (name == "square")
        return make_box(Point{-1, -1}, Point{1, 1});
    if (name == "halfspace")
    {
        Point normal(n);
        normal[n - 1] = 1;
        return make_halfspace({normal, 0.0});
    }
    if (name == "quarter-plane")
        return make_wedge({Point{1, 0}, 0.0}, {Point{0, 1}, 0.0});
    if (name == "half-capsule")
        return make_half_capsule(1, 5, n);
    if (name == "power")
        return make_power_domain(1, 2, n);
    if (name == "stadium")
        return make_stadium();
    if (name == "ellipse")
        return make_ellipse(2, 1);
    throw std::invalid_argument("unknown domain name '" + name + "'");
}

std::vector<std::string> named_domains()
{
    return {"ball",         "interval", "square",  "halfspace", "quarter-plane",
            "half-capsule", "power",    "stadium", "ellipse"};
}

}  // namespace dhk::geometry
