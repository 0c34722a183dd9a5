#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dhk/geometry/domain.hpp"

namespace dhk::geometry
{
// Factories for the catalog of analytically described convex bodies. Each
// validates its parameters and throws std::invalid_argument on violation.

Domain make_interval(double a, double b);
Domain make_box(Point lo, Point hi);
Domain make_ball(Point center, double radius);
Domain make_unit_ball(int n);
Domain make_halfspace(HalfSpace h);
Domain make_wedge(HalfSpace h1, HalfSpace h2);
//! B(0, R) joined with (0, L) x B_{n-1}(0, R); requires L >= R > 0.
Domain make_half_capsule(double radius, double length, int n);
//! {x : x_n > a |(x_1, ..., x_{n-1})|^p}; requires p >= 2, a > 0, n >= 2.
Domain make_power_domain(double a, double p, int n);
//! Points within `radius` of the segment [-half_length, half_length] x {0};
//! the defaults give the square (-1,1)^2 capped by two unit half-discs.
Domain make_stadium(double half_length = 1.0, double radius = 1.0);
Domain make_ellipse(double a, double b);

//! Builds a domain from {"kind": ..., "params": {...}}.
Domain make_domain(nlohmann::json const& spec);

//! Named shortcuts used by the CLI: ball, interval, square, halfspace,
//! quarter-plane, half-capsule, power, stadium, ellipse.
Domain make_named_domain(std::string const& name, int n = 2);
std::vector<std::string> named_domains();

}  // namespace dhk::geometry
