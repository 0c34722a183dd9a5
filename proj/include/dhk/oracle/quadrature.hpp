#pragma once

#include <string_view>

#include <json.hpp>

#include "dhk/geometry/domain.hpp"
#include "dhk/oracle/monte_carlo.hpp"

namespace dhk::oracle
{
using geometry::HalfSpace;

enum class ExactKernel
{
    gauss,
    halfspace,
    interval,
};

std::string_view to_string(ExactKernel kernel);
ExactKernel exact_kernel_from_string(std::string_view name);

//! One Chapman-Kolmogorov configuration. `halfspace` is used by the
//! half-space kernel, (a, b) by the interval kernel (one-dimensional points).
struct CkConfig
{
    ExactKernel kernel = ExactKernel::gauss;
    double t = 1;
    Point x;
    Point y;
    double alpha = 0.5;
    HalfSpace halfspace;
    double a = 0;
    double b = 1;
};

//! |int k(alpha t, x, z) k((1 - alpha) t, z, y) dz - k(t, x, y)| / k(t, x, y)
//! by nested adaptive Gauss-Kronrod quadrature; dimension at most 3.
double ck_residual(CkConfig const& cfg, double quadrature_tol = 1e-12);

struct CkCheck
{
    double lhs = 0;
    double rhs = 0;
    double constant = 1;  //!< multiplies rhs in the comparison
    bool pass = false;

    nlohmann::ordered_json to_json() const;
};

//! Gaussian mass of a ball: checks
//! int_{B(center, r)} p(alpha t, x, z) p((1-alpha) t, z, y) dz
//!   >= e^{-d^2/(2 alpha (1-alpha) t) - 1} / (2^n Gamma((n+2)/2))
//!      (1 ^ r^2 / (alpha (1-alpha) t))^{n/2} p(t, x, y),
//! d the distance from the center to (1-alpha) x + alpha y.
struct CkLowConfig
{
    double t = 1;
    double alpha = 0.5;
    Point x;
    Point y;
    Point center;
    double radius = 1;
};
CkCheck ck_low_check(CkLowConfig const& cfg, double quadrature_tol = 1e-10);

//! Weighted half-time product over two half-spaces: checks
//! int_{H1 n H2} p(t/2, x, z) p(t/2, z, y) d1(z)^a d2(z)^b dz
//!   <= K(a, b, n) p(t, x, y) (sqrt t + d1(m))^a (sqrt t + d2(m))^b
//! with m the midpoint of x and y.
struct CkHHConfig
{
    double t = 1;
    Point x;
    Point y;
    HalfSpace h1;
    HalfSpace h2;
    double exp1 = 0;
    double exp2 = 0;
};
CkCheck ck_hh_check(CkHHConfig const& cfg, double quadrature_tol = 1e-6);

//! K(a, b, n) = E (1 + |Z|)^{a+b}, Z with density exp(-|z|^2) / pi^{n/2}.
//! Since d_i(z) <= (1 + |z - m| / sqrt t)(sqrt t + d_i(m)), K bounds the
//! ratio of the two sides above for every configuration.
double ckhh_constant(double exp1, double exp2, int n);

enum class MonotonicityMode
{
    exact,
    mc,
};

struct MonotonicityResult
{
    double p1 = 0;
    double p2 = 0;
    double slack = 0;  //!< 3 combined standard errors in mc mode
    bool pass = false;

    nlohmann::ordered_json to_json() const;
};

/*!
 * Compares p_{D1}(t, x, y) with p_{D2}(t, x, y) for D1 inside D2. Exact mode
 * needs closed-form kernels (boxes, intervals, half-spaces). Containment is
 * checked by sampling first; a violation throws std::invalid_argument.
 */
MonotonicityResult monotonicity_check(Domain const& d1, Domain const& d2,
                                      double t, Point const& x, Point const& y,
                                      MonotonicityMode mode,
                                      McOptions const& opt = {});

}  // namespace dhk::oracle
