#include "dhk/oracle/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dhk/kernels/kernels.hpp"
#include "dhk/random.hpp"

namespace dhk::oracle
{
namespace
{
using geometry::distance;
using geometry::dot;
using kernels::gauss_kernel;

// Half-width of the integration window in standard deviations of the
// Gaussian factor; the mass outside is below 1e-30.
constexpr double kWindow = 12.0;
constexpr int kMaxQuadDim = 3;

using Coords = std::array<double, kMaxQuadDim>;
using Limits = std::function<std::pair<double, double>(int, Coords const&)>;
using Integrand = std::function<double(Coords const&)>;

// Iterated adaptive Gauss-Kronrod over {u : lo_k(u_<k) <= u_k <= hi_k(u_<k)}.
// Levels flagged in singular_lower use u = lo + s^3, which smooths integrands
// behaving like (u - lo)^p with p >= 0 at the lower limit.
double nested_integrate(int n, Limits const& limits, Integrand const& f,
                        double tol, std::array<bool, kMaxQuadDim> singular_lower = {})
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    Coords u{};
    std::function<double(int)> level = [&](int k) -> double {
        auto [lo, hi] = limits(k, u);
        if (!(hi > lo))
            return 0.0;
        auto inner = [&, k](double v) {
            u[k] = v;
            return k + 1 == n ? f(u) : level(k + 1);
        };
        if (!singular_lower[static_cast<std::size_t>(k)])
            return GK::integrate(inner, lo, hi, 15, tol);
        auto g = [&, lo](double s) { return 3 * s * s * inner(lo + s * s * s); };
        return GK::integrate(g, 0.0, std::cbrt(hi - lo), 15, tol);
    };
    double v = level(0);
    if (!std::isfinite(v))
        throw std::runtime_error("quadrature produced a non-finite value");
    return v;
}

void require_quad_dim(int n)
{
    if (n < 1 || n > kMaxQuadDim)
        throw std::invalid_argument("quadrature supports dimensions 1 to 3");
}

void require_alpha(double alpha)
{
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("alpha must lie in (0, 1)");
}

void require_time(double t)
{
    if (!(t > 0) || !std::isfinite(t))
        throw std::domain_error("time must be positive and finite");
}

// Maps frame coordinates to space: z = origin + sum_k u_k e_k.
struct Frame
{
    Point origin;
    std::vector<Point> axes;

    Point at(Coords const& u) const
    {
        Point z = origin;
        for (std::size_t k = 0; k < axes.size(); ++k)
            z += axes[k] * u[k];
        return z;
    }
};

Frame standard_frame(Point const& origin)
{
    return {origin, geometry::orthonormal_complement({}, origin.dim())};
}

double kernel_value(CkConfig const& c, double t, Point const& x, Point const& y)
{
    switch (c.kernel)
    {
    case ExactKernel::gauss:
        return gauss_kernel(t, x, y);
    case ExactKernel::halfspace:
        return kernels::halfspace_kernel(t, x, y, c.halfspace);
    case ExactKernel::interval:
        return kernels::interval_kernel(t, x[0], y[0], c.a, c.b);
    }
    throw std::invalid_argument("unknown kernel");
}

}  // namespace

std::string_view to_string(ExactKernel kernel)
{
    switch (kernel)
    {
    case ExactKernel::gauss:
        return "gauss";
    case ExactKernel::halfspace:
        return "halfspace";
    case ExactKernel::interval:
        return "interval";
    }
    throw std::invalid_argument("unknown kernel");
}

ExactKernel exact_kernel_from_string(std::string_view name)
{
    for (auto k : {ExactKernel::gauss, ExactKernel::halfspace, ExactKernel::interval})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

double ck_residual(CkConfig const& cfg, double quadrature_tol)
{
    require_time(cfg.t);
    require_alpha(cfg.alpha);
    cfg.x.require_same_dim(cfg.y);
    int const n = cfg.x.dim();
    require_quad_dim(n);
    if (cfg.kernel == ExactKernel::interval && n != 1)
        throw std::invalid_argument("the interval kernel is one-dimensional");

    double const t = cfg.t;
    double const alpha = cfg.alpha;
    Point m = geometry::lerp(cfg.x, cfg.y, alpha);
    double w = kWindow * std::sqrt(2 * alpha * (1 - alpha) * t);

    Frame frame = standard_frame(m);
    Limits limits = [w](int, Coords const&) { return std::pair{-w, w}; };
    if (cfg.kernel == ExactKernel::halfspace)
    {
        HalfSpace const& h = cfg.halfspace;
        frame.axes = geometry::orthonormal_complement({h.normal()}, n);
        frame.axes.insert(frame.axes.begin(), h.normal());
        double dm = h.distance(m);
        limits = [w, dm](int k, Coords const&) {
            if (k == 0)
                return std::pair{std::max(-dm, -w), w};
            return std::pair{-w, w};
        };
    }
    else if (cfg.kernel == ExactKernel::interval)
    {
        double lo = cfg.a - m[0];
        double hi = cfg.b - m[0];
        limits = [w, lo, hi](int, Coords const&) {
            return std::pair{std::max(lo, -w), std::min(hi, w)};
        };
    }

    Integrand f = [&](Coords const& u) {
        Point z = frame.at(u);
        if (cfg.kernel == ExactKernel::halfspace && cfg.halfspace.distance(z) < 0)
            return 0.0;
        return kernel_value(cfg, alpha * t, cfg.x, z)
               * kernel_value(cfg, (1 - alpha) * t, z, cfg.y);
    };
    double lhs = nested_integrate(n, limits, f, quadrature_tol);
    double rhs = kernel_value(cfg, t, cfg.x, cfg.y);
    if (!(rhs > 0))
        throw std::domain_error("kernel vanishes at the configuration");
    return std::abs(lhs - rhs) / rhs;
}

nlohmann::ordered_json CkCheck::to_json() const
{
    nlohmann::ordered_json j;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["constant"] = constant;
    j["pass"] = pass;
    return j;
}

CkCheck ck_low_check(CkLowConfig const& cfg, double quadrature_tol)
{
    require_time(cfg.t);
    require_alpha(cfg.alpha);
    cfg.x.require_same_dim(cfg.y);
    cfg.x.require_same_dim(cfg.center);
    int const n = cfg.x.dim();
    require_quad_dim(n);
    if (!(cfg.radius >= 0))
        throw std::invalid_argument("radius must be non-negative");

    double const t = cfg.t;
    double const alpha = cfg.alpha;
    double const s = alpha * (1 - alpha) * t;
    Point m = geometry::lerp(cfg.x, cfg.y, alpha);
    double w = kWindow * std::sqrt(2 * s);
    double r = cfg.radius;
    Point off = m - cfg.center;

    // Where the ball's chord cuts the Gaussian window, level k integrates
    // theta_k with u_k = c_k sin(theta_k), c_k the half-chord left by u_<k.
    // This removes the square-root edges of the ball. Chords wider than the
    // window keep u_k itself, which stays exact when c_k is huge.
    Frame frame = standard_frame(cfg.center);
    auto chord = [r](int k, Coords const& u) {
        double rem = r * r;
        for (int j = 0; j < k; ++j)
            rem -= u[j] * u[j];
        return rem > 0 ? std::sqrt(rem) : 0.0;
    };
    auto clipped = [&](int k, double c) {
        return off[k] - w < -c || off[k] + w > c;
    };
    auto cartesian = [&](Coords const& v, int upto) {
        Coords u{};
        double jac = 1;
        for (int k = 0; k < upto; ++k)
        {
            double c = chord(k, u);
            if (clipped(k, c))
            {
                u[k] = c * std::sin(v[k]);
                jac *= c * std::cos(v[k]);
            }
            else
            {
                u[k] = v[k];
            }
        }
        return std::pair{u, jac};
    };
    Limits limits = [&](int k, Coords const& v) {
        double c = chord(k, cartesian(v, k).first);
        if (!(c > 0))
            return std::pair{0.0, 0.0};
        if (!clipped(k, c))
            return std::pair{off[k] - w, off[k] + w};
        double lo = std::clamp((off[k] - w) / c, -1.0, 1.0);
        double hi = std::clamp((off[k] + w) / c, -1.0, 1.0);
        return std::pair{std::asin(lo), std::asin(hi)};
    };
    Integrand f = [&](Coords const& v) {
        auto [u, jac] = cartesian(v, n);
        Point z = frame.at(u);
        return jac * gauss_kernel(alpha * t, cfg.x, z)
               * gauss_kernel((1 - alpha) * t, z, cfg.y);
    };

    CkCheck out;
    out.lhs = nested_integrate(n, limits, f, quadrature_tol);
    double d = distance(cfg.center, m);
    out.rhs = std::exp(-d * d / (2 * s) - 1)
              / (std::pow(2.0, n) * std::tgamma((n + 2) / 2.0))
              * std::pow(std::min(1.0, r * r / s), n / 2.0)
              * gauss_kernel(t, cfg.x, cfg.y);
    out.pass = out.lhs >= out.rhs;
    return out;
}

double ckhh_constant(double exp1, double exp2, int n)
{
    if (exp1 < 0 || exp2 < 0)
        throw std::invalid_argument("exponents must be non-negative");
    require_quad_dim(n);
    double e = exp1 + exp2;
    boost::math::quadrature::exp_sinh<double> integrator;
    double moment = integrator.integrate([&](double rho) {
        if (rho == 0)
            return n == 1 ? 1.0 : 0.0;
        return std::exp(e * std::log1p(rho) + (n - 1) * std::log(rho) - rho * rho);
    });
    return 2 * moment / std::tgamma(n / 2.0);
}

CkCheck ck_hh_check(CkHHConfig const& cfg, double quadrature_tol)
{
    require_time(cfg.t);
    cfg.x.require_same_dim(cfg.y);
    int const n = cfg.x.dim();
    require_quad_dim(n);
    HalfSpace const& h1 = cfg.h1;
    HalfSpace const& h2 = cfg.h2;
    for (Point const* p : {&cfg.x, &cfg.y})
    {
        if (h1.distance(*p) < 0 || h2.distance(*p) < 0)
            throw std::domain_error("points must lie in the intersection");
    }

    double const t = cfg.t;
    Point m = geometry::midpoint(cfg.x, cfg.y);
    double w = (kWindow + 2) * std::sqrt(t / 2);
    double d1m = h1.distance(m);
    double d2m = h2.distance(m);
    double g = dot(h1.normal(), h2.normal());

    Frame frame{m, {}};
    Limits limits;
    if (std::abs(g) > 1 - 1e-12)
    {
        frame.axes = geometry::orthonormal_complement({h1.normal()}, n);
        frame.axes.insert(frame.axes.begin(), h1.normal());
        double lo = -d1m;
        double hi = w;
        if (g > 0)
            lo = std::max(lo, -d2m);
        else
            hi = std::min(hi, d2m);
        limits = [w, lo, hi](int k, Coords const&) {
            if (k == 0)
                return std::pair{std::max(lo, -w), hi};
            return std::pair{-w, w};
        };
    }
    else
    {
        Point e1 = h2.normal() - h1.normal() * g;
        e1 *= 1 / norm(e1);
        double slope = dot(h2.normal(), e1);
        frame.axes = geometry::orthonormal_complement({h1.normal(), e1}, n);
        frame.axes.insert(frame.axes.begin(), e1);
        frame.axes.insert(frame.axes.begin(), h1.normal());
        limits = [=](int k, Coords const& u) {
            if (k == 0)
                return std::pair{std::max(-d1m, -w), w};
            if (k == 1)
                return std::pair{std::max(-(d2m + g * u[0]) / slope, -w), w};
            return std::pair{-w, w};
        };
    }
    Integrand f = [&](Coords const& u) {
        Point z = frame.at(u);
        double a = std::max(0.0, h1.distance(z));
        double b = std::max(0.0, h2.distance(z));
        return gauss_kernel(t / 2, cfg.x, z) * gauss_kernel(t / 2, z, cfg.y)
               * std::pow(a, cfg.exp1) * std::pow(b, cfg.exp2);
    };

    CkCheck out;
    // The weights vanish like a power of the distance on each face, and the
    // faces are lower limits of the first two levels.
    out.lhs = nested_integrate(n, limits, f, quadrature_tol, {true, true, false});
    double st = std::sqrt(t);
    out.rhs = gauss_kernel(t, cfg.x, cfg.y) * std::pow(st + d1m, cfg.exp1)
              * std::pow(st + d2m, cfg.exp2);
    out.constant = ckhh_constant(cfg.exp1, cfg.exp2, n);
    out.pass = out.lhs <= out.constant * out.rhs;
    return out;
}

nlohmann::ordered_json MonotonicityResult::to_json() const
{
    nlohmann::ordered_json j;
    j["p1"] = p1;
    j["p2"] = p2;
    j["slack"] = slack;
    j["pass"] = pass;
    return j;
}

MonotonicityResult monotonicity_check(Domain const& d1, Domain const& d2,
                                      double t, Point const& x, Point const& y,
                                      MonotonicityMode mode,
                                      McOptions const& opt)
{
    if (d1.dim() != d2.dim())
        throw std::invalid_argument("domains differ in dimension");
    if (!d1.in_closure(x) || !d1.in_closure(y))
        throw std::domain_error("points must lie in the smaller domain");

    // Sampled containment: interior points and boundary points of D1.
    random::Stream rng(0x6d6f6e6fULL, 0);
    geometry::AxisBox box = d1.sampling_box(4.0);
    for (int k = 0, found = 0; k < 200000 && found < 2000; ++k)
    {
        Point z(d1.dim());
        for (int i = 0; i < d1.dim(); ++i)
            z[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * rng.uniform();
        if (!d1.contains(z))
            continue;
        ++found;
        if (!d2.in_closure(z))
            throw std::invalid_argument("first domain is not contained in the second");
    }
    auto axes = d1.boundary_chart(4.0);
    for (int k = 0; k < 500; ++k)
    {
        std::vector<double> u;
        for (auto const& ax : axes)
            u.push_back(ax.lo + (ax.hi - ax.lo) * rng.uniform());
        if (!d2.in_closure(d1.boundary_point(u)))
            throw std::invalid_argument("first domain is not contained in the second");
    }

    MonotonicityResult r;
    if (mode == MonotonicityMode::exact)
    {
        auto k1 = exact_kernel_source(d1);
        auto k2 = exact_kernel_source(d2);
        if (!k1 || !k2)
            throw std::invalid_argument("exact mode needs closed-form kernels");
        r.p1 = (*k1)(t, x, y);
        r.p2 = (*k2)(t, x, y);
    }
    else
    {
        McEstimate e1 = mc_kernel(d1, t, x, y, opt);
        McEstimate e2 = mc_kernel(d2, t, x, y, opt);
        r.p1 = e1.mean;
        r.p2 = e2.mean;
        r.slack = 3 * std::hypot(e1.std_error, e2.std_error);
    }
    r.pass = r.p1 <= r.p2 + r.slack;
    return r;
}

}  // namespace dhk::oracle
