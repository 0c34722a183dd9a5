#include "dhk/geometry/halfspace.hpp"

#include <algorithm>
#include <numbers>

namespace dhk::geometry
{
HalfSpace::HalfSpace(Point normal, double offset)
{
    double len = norm(normal);
    if (!(len > 0))
        throw std::invalid_argument("half-space normal must be non-zero");
    normal_ = normal * (1 / len);
    offset_ = offset / len;
}

HalfSpace HalfSpace::through(Point const& on_boundary, Point normal)
{
    double len = norm(normal);
    if (!(len > 0))
        throw std::invalid_argument("half-space normal must be non-zero");
    normal *= 1 / len;
    HalfSpace h;
    h.offset_ = dot(normal, on_boundary);
    h.normal_ = normal;
    return h;
}

double angle_between(HalfSpace const& h1, HalfSpace const& h2)
{
    double c = std::clamp(dot(h1.normal(), h2.normal()), -1.0, 1.0);
    return std::numbers::pi - std::acos(c);
}

}  // namespace dhk::geometry
