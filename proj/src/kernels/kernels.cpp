#include "dhk/kernels/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dhk::kernels
{
namespace
{
constexpr double kPi = std::numbers::pi;
constexpr double kSeriesTol = 1e-16;

void require_time(double t)
{
    if (!(t > 0) || !std::isfinite(t))
        throw std::domain_error("time must be positive and finite, got "
                                + std::to_string(t));
}

void require_interval(double x, double y, double a, double b)
{
    if (!(a < b))
        throw std::invalid_argument("interval requires a < b");
    if (!(x >= a && x <= b && y >= a && y <= b))
        throw std::domain_error("points must lie in the closed interval");
}

double gauss_1d(double t, double u)
{
    return std::exp(-u * u / (4 * t)) / std::sqrt(4 * kPi * t);
}

}  // namespace

double gauss_kernel_r2(double t, double r2, int n)
{
    require_time(t);
    return std::pow(4 * kPi * t, -0.5 * n) * std::exp(-r2 / (4 * t));
}

double gauss_kernel(double t, Point const& x, Point const& y)
{
    return gauss_kernel_r2(t, squared_distance(x, y), x.dim());
}

double halfspace_kernel(double t, Point const& x, Point const& y,
                        HalfSpace const& h)
{
    require_time(t);
    double dx = h.distance(x);
    double dy = h.distance(y);
    if (dx < 0 || dy < 0)
        throw std::domain_error("point outside the half-space");
    return gauss_kernel(t, x, y) * -std::expm1(-dx * dy / t);
}

double halfspace_kernel_reflection(double t, Point const& x, Point const& y,
                                   HalfSpace const& h)
{
    require_time(t);
    if (h.distance(x) < 0 || h.distance(y) < 0)
        throw std::domain_error("point outside the half-space");
    return gauss_kernel(t, x, y) - gauss_kernel(t, x, h.reflect(y));
}

double interval_kernel_images(double t, double x, double y, double a, double b)
{
    require_time(t);
    require_interval(x, y, a, b);
    if (x == a || x == b || y == a || y == b)
        return 0.0;
    double len = b - a;
    double u = x - y;
    double v = x + y - 2 * a;
    double sum = gauss_1d(t, u) - gauss_1d(t, v);
    for (int k = 1; k < 100000; ++k)
    {
        double shift = 2 * k * len;
        double terms[4] = {gauss_1d(t, u + shift), gauss_1d(t, u - shift),
                           gauss_1d(t, v + shift), gauss_1d(t, v - shift)};
        sum += (terms[0] + terms[1]) - (terms[2] + terms[3]);
        double largest = std::max(std::max(terms[0], terms[1]),
                                  std::max(terms[2], terms[3]));
        if (k >= 2 && largest <= kSeriesTol * std::abs(sum))
            break;
        if (largest == 0)
            break;
    }
    return std::max(sum, 0.0);
}

double interval_kernel_eigen(double t, double x, double y, double a, double b)
{
    require_time(t);
    require_interval(x, y, a, b);
    if (x == a || x == b || y == a || y == b)
        return 0.0;
    double len = b - a;
    double px = kPi * (x - a) / len;
    double py = kPi * (y - a) / len;
    double sum = 0;
    for (int m = 1; m < 100000; ++m)
    {
        double w = (2 / len) * std::exp(-(m * kPi / len) * (m * kPi / len) * t);
        sum += w * (std::sin(m * px) * std::sin(m * py));
        if (w <= kSeriesTol * std::abs(sum) || w == 0)
            break;
    }
    return std::max(sum, 0.0);
}

double interval_kernel(double t, double x, double y, double a, double b)
{
    require_time(t);
    double len = b - a;
    if (t < len * len / kPi)
        return interval_kernel_images(t, x, y, a, b);
    return interval_kernel_eigen(t, x, y, a, b);
}

double box_kernel(double t, Point const& x, Point const& y, Point const& lo,
                  Point const& hi)
{
    x.require_same_dim(y);
    x.require_same_dim(lo);
    x.require_same_dim(hi);
    double v = 1;
    for (int i = 0; i < x.dim(); ++i)
        v *= interval_kernel(t, x[i], y[i], lo[i], hi[i]);
    return v;
}

double ball_h_factor(double t, Point const& x, Point const& y)
{
    require_time(t);
    double dx = 1 - norm(x);
    double dy = 1 - norm(y);
    if (dx < 0 || dy < 0)
        throw std::domain_error("point outside the unit ball");
    double r2 = squared_distance(x, y);
    return min_term(dx * dy, t) + min_term(dx * r2, t) * min_term(dy * r2, t);
}

double vdb_factor(double t, double rho, int n)
{
    require_time(t);
    if (rho < 0)
        throw std::invalid_argument("segment distance must be non-negative");
    double u = rho * rho / t;
    double series = 0;
    double term = 2;  // 2^k u^{k-1} / (k-1)! at k = 1
    for (int k = 1; k <= n; ++k)
    {
        series += term;
        term *= 2 * u / k;
    }
    return std::max(0.0, 1 - std::exp(-u) * series);
}

double vdb_lower(double t, Point const& x, Point const& y, double rho)
{
    return gauss_kernel(t, x, y) * vdb_factor(t, rho, x.dim());
}

}  // namespace dhk::kernels
