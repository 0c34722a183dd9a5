#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dhk/geometry/domain.hpp"

namespace dhk::bounds
{
using geometry::Domain;
using geometry::HalfSpace;
using geometry::Point;

enum class BoundKind
{
    upper_main,
    upper_midpoint,
    wedge_obtuse,
    lower_basic,
    lower_improved_product,  //!< product of the two midpoint min-terms
    lower_improved_sum,      //!< basic term plus the midpoint cross term
    two_sided_sq,
    two_sided_sr,
};

std::string_view to_string(BoundKind kind);
BoundKind bound_kind_from_string(std::string_view name);
std::vector<BoundKind> all_bound_kinds();

struct NamedFactor
{
    std::string name;
    double value = 0;
};

/*!
 * A bound as constant * gaussian * composition(factors).
 *
 * The composition depends on the kind: a single min-term, the product of
 * two, or f0 + f1 * f2 for the three-factor kinds.
 */
struct BoundBreakdown
{
    BoundKind kind = BoundKind::lower_basic;
    double value = 0;
    double gaussian = 0;
    double constant = 1;
    std::vector<NamedFactor> factors;

    double composition() const;
    double factor(std::string_view name) const;
    nlohmann::ordered_json to_json() const;
};

// Bound evaluators. Points must lie in the closure of the domain
// (std::domain_error otherwise); t must be positive.

//! Requires 0 < t < T and a positive inner-ball radius.
BoundBreakdown upper_bound_main(Domain const& d, double t, Point const& x,
                                Point const& y, double T = 1.0);
BoundBreakdown upper_bound_midpoint(Domain const& d, double t, Point const& x,
                                    Point const& y, double T = 1.0);
//! Requires angle_between(h1, h2) >= pi/2.
BoundBreakdown wedge_obtuse_upper(HalfSpace const& h1, HalfSpace const& h2,
                                  double t, Point const& x, Point const& y);
BoundBreakdown lower_bound_basic(Domain const& d, double t, Point const& x,
                                 Point const& y);
//! (product form, sum form)
std::pair<BoundBreakdown, BoundBreakdown>
lower_bound_improved(Domain const& d, double t, Point const& x, Point const& y);

enum class TwoSidedVariant
{
    sq,
    sr,
};
//! SQ requires a strictly convex domain.
BoundBreakdown two_sided_factor(Domain const& d, double t, Point const& x,
                                Point const& y, TwoSidedVariant variant);

struct ZhangConstants
{
    double c1 = 1;
    double c2 = 0.25;
    double c3 = 1;
    double c4 = 0.25;
};
struct ZhangBounds
{
    double lower = 0;
    double upper = 0;
};
//! c (1 ^ dx dy / t) t^{-n/2} exp(-c' |x-y|^2 / t) for (c1, c2) and (c3, c4).
ZhangBounds zhang_bound(double t, Point const& x, Point const& y, double dx,
                        double dy, ZhangConstants const& c);

//! Any kernel p_D(t, x, y): exact formula or Monte Carlo mean.
using KernelSource
    = std::function<double(double t, Point const& x, Point const& y)>;

//! kappa * p_D(t, x, z + eps n_z) / eps with n_z the inward normal at the
//! boundary point z; requires 0 < eps < r/4.
double exit_density_estimate(Domain const& d, double t, Point const& x,
                             Point const& z, double eps,
                             KernelSource const& kernel, double kappa = 1.0);

}  // namespace dhk::bounds
