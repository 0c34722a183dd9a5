#pragma once

#include "dhk/geometry/point.hpp"

namespace dhk::geometry
{
/*!
 * Open half-space {u : normal . u > offset} with a unit inward normal.
 *
 * distance() is the signed distance to the bounding hyperplane; it is
 * positive exactly on the interior.
 */
class HalfSpace
{
  public:
    HalfSpace() = default;

    //! Normalizes the given normal; the offset is rescaled to describe the
    //! same set.
    HalfSpace(Point normal, double offset);

    //! Half-space whose boundary passes through `on_boundary`.
    static HalfSpace through(Point const& on_boundary, Point normal);

    Point const& normal() const noexcept { return normal_; }
    double offset() const noexcept { return offset_; }
    int dim() const noexcept { return normal_.dim(); }

    double distance(Point const& x) const { return dot(normal_, x) - offset_; }

    //! Mirror image across the bounding hyperplane.
    Point reflect(Point const& x) const
    {
        return x - normal_ * (2 * distance(x));
    }

    //! Foot of the perpendicular from x onto the bounding hyperplane.
    Point foot(Point const& x) const { return x - normal_ * distance(x); }

  private:
    Point normal_;
    double offset_ = 0;
};

//! Interior angle of the wedge H1 n H2: pi minus the angle between the
//! inward normals.
double angle_between(HalfSpace const& h1, HalfSpace const& h2);

}  // namespace dhk::geometry
