#include "dhk/bounds/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dhk/kernels/kernels.hpp"

namespace dhk::bounds
{
namespace
{
using kernels::min_term;

struct KindName
{
    BoundKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {BoundKind::upper_main, "upper-main"},
    {BoundKind::upper_midpoint, "upper-midpoint"},
    {BoundKind::wedge_obtuse, "wedge-obtuse"},
    {BoundKind::lower_basic, "lower-basic"},
    {BoundKind::lower_improved_product, "lower-improved-product"},
    {BoundKind::lower_improved_sum, "lower-improved-sum"},
    {BoundKind::two_sided_sq, "two-sided-sq"},
    {BoundKind::two_sided_sr, "two-sided-sr"},
};

void require_time(double t)
{
    if (!(t > 0) || !std::isfinite(t))
        throw std::domain_error("time must be positive and finite");
}

void require_points(Domain const& d, Point const& x, Point const& y)
{
    for (Point const* p : {&x, &y})
    {
        if (!d.in_closure(*p))
            throw std::domain_error("point " + geometry::format_point(*p)
                                    + " lies outside the domain");
    }
}

BoundBreakdown make(BoundKind kind, double t, Point const& x, Point const& y,
                    std::vector<NamedFactor> factors)
{
    BoundBreakdown b;
    b.kind = kind;
    b.gaussian = kernels::gauss_kernel(t, x, y);
    b.factors = std::move(factors);
    b.value = b.constant * b.gaussian * b.composition();
    return b;
}

BoundBreakdown upper_with(BoundKind kind, Domain const& d, double t,
                          Point const& x, Point const& y, double T,
                          bool midpoint)
{
    require_time(t);
    if (!(t < T))
        throw std::domain_error("upper bounds require t < T");
    if (!(d.inner_ball_radius() > 0))
        throw std::invalid_argument(
            "upper bounds require a positive inner-ball radius");
    require_points(d, x, y);
    double dx = d.distance(x);
    double dy = d.distance(y);
    HalfSpace hx = d.supporting_halfspace(x);
    HalfSpace hy = d.supporting_halfspace(y);
    Point m = geometry::midpoint(x, y);
    Point const& far_x = midpoint ? m : y;
    Point const& far_y = midpoint ? m : x;
    std::string suffix = midpoint ? "_mid" : "";
    return make(kind, t, x, y,
                {{"min_dd", min_term(dx * dy, t)},
                 {"min_hx" + suffix, min_term(hx.distance(x) * hx.distance(far_x), t)},
                 {"min_hy" + suffix, min_term(hy.distance(y) * hy.distance(far_y), t)}});
}

BoundBreakdown lower_sum(BoundKind kind, Domain const& d, double t,
                         Point const& x, Point const& y)
{
    double dx = d.distance(x);
    double dy = d.distance(y);
    double dm = d.distance(geometry::midpoint(x, y));
    return make(kind, t, x, y,
                {{"min_dd", min_term(dx * dy, t)},
                 {"min_x_mid", min_term(dx * dm, t)},
                 {"min_y_mid", min_term(dy * dm, t)}});
}

}  // namespace

std::string_view to_string(BoundKind kind)
{
    for (auto const& kn : kKindNames)
        if (kn.kind == kind)
            return kn.name;
    throw std::invalid_argument("unknown bound kind");
}

BoundKind bound_kind_from_string(std::string_view name)
{
    for (auto const& kn : kKindNames)
        if (kn.name == name)
            return kn.kind;
    throw std::invalid_argument("unknown bound kind '" + std::string(name) + "'");
}

std::vector<BoundKind> all_bound_kinds()
{
    std::vector<BoundKind> kinds;
    for (auto const& kn : kKindNames)
        kinds.push_back(kn.kind);
    return kinds;
}

double BoundBreakdown::composition() const
{
    switch (factors.size())
    {
    case 1:
        return factors[0].value;
    case 2:
        return factors[0].value * factors[1].value;
    case 3:
        return factors[0].value + factors[1].value * factors[2].value;
    default:
        throw std::logic_error("bound breakdown with unexpected factor count");
    }
}

double BoundBreakdown::factor(std::string_view name) const
{
    for (auto const& f : factors)
        if (f.name == name)
            return f.value;
    throw std::out_of_range("no factor named '" + std::string(name) + "'");
}

nlohmann::ordered_json BoundBreakdown::to_json() const
{
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(kind));
    j["value"] = value;
    j["gaussian"] = gaussian;
    j["constant"] = constant;
    j["factor"] = composition();
    nlohmann::ordered_json fs = nlohmann::ordered_json::object();
    for (auto const& f : factors)
        fs[f.name] = f.value;
    j["factors"] = fs;
    return j;
}

BoundBreakdown upper_bound_main(Domain const& d, double t, Point const& x,
                                Point const& y, double T)
{
    return upper_with(BoundKind::upper_main, d, t, x, y, T, false);
}

BoundBreakdown upper_bound_midpoint(Domain const& d, double t, Point const& x,
                                    Point const& y, double T)
{
    return upper_with(BoundKind::upper_midpoint, d, t, x, y, T, true);
}

BoundBreakdown wedge_obtuse_upper(HalfSpace const& h1, HalfSpace const& h2,
                                  double t, Point const& x, Point const& y)
{
    require_time(t);
    if (geometry::angle_between(h1, h2) < std::numbers::pi / 2 - 1e-12)
        throw std::invalid_argument("wedge bound requires an angle >= pi/2");
    double a1 = h1.distance(x);
    double b1 = h1.distance(y);
    double a2 = h2.distance(x);
    double b2 = h2.distance(y);
    if (a1 < 0 || b1 < 0 || a2 < 0 || b2 < 0)
        throw std::domain_error("point outside the wedge");
    double dx = std::min(a1, a2);
    double dy = std::min(b1, b2);
    return make(BoundKind::wedge_obtuse, t, x, y,
                {{"min_dd", min_term(dx * dy, t)},
                 {"min_h1", min_term(a1 * b1, t)},
                 {"min_h2", min_term(a2 * b2, t)}});
}

BoundBreakdown lower_bound_basic(Domain const& d, double t, Point const& x,
                                 Point const& y)
{
    require_time(t);
    require_points(d, x, y);
    return make(BoundKind::lower_basic, t, x, y,
                {{"min_dd", min_term(d.distance(x) * d.distance(y), t)}});
}

std::pair<BoundBreakdown, BoundBreakdown>
lower_bound_improved(Domain const& d, double t, Point const& x, Point const& y)
{
    require_time(t);
    require_points(d, x, y);
    double dx = d.distance(x);
    double dy = d.distance(y);
    double reach = d.distance(geometry::midpoint(x, y)) + std::sqrt(t);
    BoundBreakdown product
        = make(BoundKind::lower_improved_product, t, x, y,
               {{"min_x_mid", min_term(dx * reach, t)},
                {"min_y_mid", min_term(dy * reach, t)}});
    return {product, lower_sum(BoundKind::lower_improved_sum, d, t, x, y)};
}

BoundBreakdown two_sided_factor(Domain const& d, double t, Point const& x,
                                Point const& y, TwoSidedVariant variant)
{
    require_time(t);
    require_points(d, x, y);
    if (variant == TwoSidedVariant::sq)
    {
        if (!d.strictly_convex())
            throw std::invalid_argument(
                "the SQ form requires a strictly convex domain");
        return lower_sum(BoundKind::two_sided_sq, d, t, x, y);
    }
    return upper_with(BoundKind::two_sided_sr, d, t, x, y,
                      std::numeric_limits<double>::infinity(), false);
}

ZhangBounds zhang_bound(double t, Point const& x, Point const& y, double dx,
                        double dy, ZhangConstants const& c)
{
    require_time(t);
    if (!(c.c1 > 0 && c.c2 > 0 && c.c3 > 0 && c.c4 > 0))
        throw std::invalid_argument("constants must be positive");
    if (dx < 0 || dy < 0)
        throw std::invalid_argument("boundary distances must be non-negative");
    double m = min_term(dx * dy, t);
    double r2 = squared_distance(x, y);
    double scale = std::pow(t, -0.5 * x.dim());
    return {c.c1 * m * scale * std::exp(-c.c2 * r2 / t),
            c.c3 * m * scale * std::exp(-c.c4 * r2 / t)};
}

double exit_density_estimate(Domain const& d, double t, Point const& x,
                             Point const& z, double eps,
                             KernelSource const& kernel, double kappa)
{
    require_time(t);
    if (!(eps > 0 && eps < d.inner_ball_radius() / 4))
        throw std::invalid_argument("eps must lie in (0, r/4)");
    if (!d.on_boundary(z))
        throw std::domain_error("exit point must lie on the boundary");
    HalfSpace h = d.supporting_halfspace(z);
    return kappa * kernel(t, x, z + h.normal() * eps) / eps;
}

}  // namespace dhk::bounds
