#pragma once

#include <memory>
#include <vector>

#include "dhk/geometry/domain.hpp"

namespace dhk::geometry::detail
{
std::shared_ptr<Shape const> box_shape(Point lo, Point hi);
std::shared_ptr<Shape const> ball_shape(Point center, double radius);
std::shared_ptr<Shape const> halfspace_shape(HalfSpace h);
std::shared_ptr<Shape const> wedge_shape(HalfSpace h1, HalfSpace h2);
std::shared_ptr<Shape const> half_capsule_shape(double radius, double length,
                                                int n);
std::shared_ptr<Shape const> power_shape(double a, double p, int n);
std::shared_ptr<Shape const> stadium_shape(double half_length, double radius);
std::shared_ptr<Shape const> ellipse_shape(double a, double b);

//! Largest principal curvature of the graph x_n = a |x~|^p over all x~.
double power_max_curvature(double a, double p, int n);

}  // namespace dhk::geometry::detail
