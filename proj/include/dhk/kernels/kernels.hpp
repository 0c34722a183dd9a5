#pragma once

#include "dhk/geometry/halfspace.hpp"
#include "dhk/geometry/point.hpp"

namespace dhk::kernels
{
using geometry::HalfSpace;
using geometry::Point;

// All kernels solve du/dt = Laplacian(u); the whole-space kernel is
// (4 pi t)^{-n/2} exp(-|x - y|^2 / 4t). Invalid times throw
// std::domain_error, as do points outside the closure of the domain.

double gauss_kernel(double t, Point const& x, Point const& y);
//! Whole-space kernel from the squared distance |x - y|^2 in dimension n.
double gauss_kernel_r2(double t, double r2, int n);

//! Dirichlet kernel of H in product form p(t,x,y) (1 - exp(-dx dy / t)).
double halfspace_kernel(double t, Point const& x, Point const& y,
                        HalfSpace const& h);
//! Same kernel as the difference p(t,x,y) - p(t,x,reflect(y)).
double halfspace_kernel_reflection(double t, Point const& x, Point const& y,
                                   HalfSpace const& h);

//! One-dimensional Dirichlet kernel of (a, b). Uses the image sum for
//! t < (b-a)^2/pi and the sine series otherwise.
double interval_kernel(double t, double x, double y, double a, double b);
double interval_kernel_images(double t, double x, double y, double a, double b);
double interval_kernel_eigen(double t, double x, double y, double a, double b);

//! Product of interval kernels over the coordinates of an axis-aligned box.
double box_kernel(double t, Point const& x, Point const& y, Point const& lo,
                  Point const& hi);

//! Two-sided comparison factor for the unit ball B(0, 1):
//! (1 ^ dx dy / t) + (1 ^ dx |x-y|^2 / t)(1 ^ dy |x-y|^2 / t).
double ball_h_factor(double t, Point const& x, Point const& y);

//! Not-feeling-the-boundary factor
//! max(0, 1 - exp(-u) sum_{k=1}^{n} 2^k u^{k-1} / (k-1)!), u = rho^2 / t.
double vdb_factor(double t, double rho, int n);
//! p(t,x,y) * vdb_factor(t, rho, n), rho the distance from [x,y] to the
//! boundary.
double vdb_lower(double t, Point const& x, Point const& y, double rho);

//! 1 ^ (a / t), the saturating ratio used by every bound.
inline double min_term(double a, double t)
{
    double v = a / t;
    return v < 1 ? v : 1.0;
}

}  // namespace dhk::kernels
