#include "shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dhk::geometry::detail
{
namespace
{
constexpr double kPi = std::numbers::pi;

Point unit(int n, int axis, double sign = 1.0)
{
    Point e(n);
    e[axis] = sign;
    return e;
}

// Keeps the candidate nearer to x, breaking exact ties lexicographically.
void keep_better(Projection& best, bool& have, Projection const& cand)
{
    if (!have || cand.distance < best.distance
        || (cand.distance == best.distance && lex_less(cand.point, best.point)))
    {
        best = cand;
        have = true;
    }
}

std::vector<ChartAxis> angle_chart(int n)
{
    if (n == 1)
        return {{0, 2 * kPi}};
    std::vector<ChartAxis> axes;
    for (int i = 0; i < n - 2; ++i)
        axes.push_back({0, kPi});
    axes.push_back({0, 2 * kPi});
    return axes;
}

// Boundary point hit by the ray c + s dir; reach must exit the body.
Point ray_boundary(Shape const& shape, Point const& c, Point const& dir,
                   double reach)
{
    double lo = 0;
    double hi = reach;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * reach; ++it)
    {
        double mid = 0.5 * (lo + hi);
        if (shape.contains(c + dir * mid))
            lo = mid;
        else
            hi = mid;
    }
    return shape.project(c + dir * lo).point;
}

class BoxShape final : public Shape
{
  public:
    BoxShape(Point lo, Point hi) : lo_{lo}, hi_{hi} {}

    int dim() const override { return lo_.dim(); }

    bool contains(Point const& x) const override
    {
        for (int i = 0; i < dim(); ++i)
            if (!(x[i] > lo_[i] && x[i] < hi_[i]))
                return false;
        return true;
    }

    double signed_distance(Point const& x) const override
    {
        double d = std::numeric_limits<double>::infinity();
        for (int i = 0; i < dim(); ++i)
            d = std::min({d, x[i] - lo_[i], hi_[i] - x[i]});
        if (d >= 0)
            return d;
        return -project(x).distance;
    }

    Projection project(Point const& x) const override
    {
        int const n = dim();
        bool inside = true;
        for (int i = 0; i < n; ++i)
            inside = inside && x[i] >= lo_[i] && x[i] <= hi_[i];
        if (!inside)
        {
            Point z = x;
            int worst = 0;
            double worst_violation = -1;
            for (int i = 0; i < n; ++i)
            {
                double v = std::max(lo_[i] - x[i], x[i] - hi_[i]);
                if (v > worst_violation)
                {
                    worst_violation = v;
                    worst = i;
                }
                z[i] = std::clamp(x[i], lo_[i], hi_[i]);
            }
            return {z, geometry::distance(x, z), face(worst, x[worst] < lo_[worst])};
        }
        Projection best;
        bool have = false;
        for (int i = 0; i < n; ++i)
        {
            Point z = x;
            z[i] = lo_[i];
            keep_better(best, have, {z, x[i] - lo_[i], face(i, true)});
            z[i] = hi_[i];
            keep_better(best, have, {z, hi_[i] - x[i], face(i, false)});
        }
        return best;
    }

    HalfSpace tangent_at(Point const& w) const override
    {
        double tol = 1e-10 * scale();
        int hits = 0;
        HalfSpace h;
        for (int i = 0; i < dim(); ++i)
        {
            if (std::abs(w[i] - lo_[i]) <= tol)
            {
                ++hits;
                h = face(i, true);
            }
            if (std::abs(w[i] - hi_[i]) <= tol)
            {
                ++hits;
                h = face(i, false);
            }
        }
        if (hits == 0)
            return project(w).tangent;
        if (hits > 1)
            throw std::domain_error("tangent undefined at a box corner");
        return h;
    }

    std::vector<ChartAxis> boundary_chart(double) const override
    {
        return angle_chart(dim());
    }

    Point boundary_point(std::span<double const> u) const override
    {
        int const n = dim();
        Point c = lerp(lo_, hi_, 0.5);
        Point v = direction_from_angles(u, n);
        double s = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
        {
            if (v[i] > 0)
                s = std::min(s, (hi_[i] - c[i]) / v[i]);
            else if (v[i] < 0)
                s = std::min(s, (lo_[i] - c[i]) / v[i]);
        }
        Point z = c + v * s;
        for (int i = 0; i < n; ++i)
            z[i] = std::clamp(z[i], lo_[i], hi_[i]);
        return z;
    }

    AxisBox sampling_box(double) const override { return {lo_, hi_}; }

    double scale() const override
    {
        double s = 0;
        for (int i = 0; i < dim(); ++i)
            s = std::max(s, hi_[i] - lo_[i]);
        return s;
    }

  private:
    HalfSpace face(int i, bool low) const
    {
        int n = dim();
        return low ? HalfSpace(unit(n, i), lo_[i])
                   : HalfSpace(unit(n, i, -1.0), -hi_[i]);
    }

    Point lo_;
    Point hi_;
};

class BallShape final : public Shape
{
  public:
    BallShape(Point c, double r) : c_{c}, r_{r} {}

    int dim() const override { return c_.dim(); }
    bool contains(Point const& x) const override
    {
        return squared_distance(x, c_) < r_ * r_;
    }
    double signed_distance(Point const& x) const override
    {
        return r_ - geometry::distance(x, c_);
    }
    double distance(Point const& x) const override
    {
        return std::abs(signed_distance(x));
    }

    Projection project(Point const& x) const override
    {
        double d = geometry::distance(x, c_);
        Point z = d > 0 ? c_ + (x - c_) * (r_ / d) : c_ - unit(dim(), 0) * r_;
        return {z, std::abs(r_ - d), tangent_at(z)};
    }

    HalfSpace tangent_at(Point const& w) const override
    {
        return HalfSpace::through(w, c_ - w);
    }

    std::vector<ChartAxis> boundary_chart(double) const override
    {
        return angle_chart(dim());
    }
    Point boundary_point(std::span<double const> u) const override
    {
        return c_ + direction_from_angles(u, dim()) * r_;
    }
    AxisBox sampling_box(double) const override
    {
        Point lo = c_;
        Point hi = c_;
        for (int i = 0; i < dim(); ++i)
        {
            lo[i] -= r_;
            hi[i] += r_;
        }
        return {lo, hi};
    }
    double scale() const override { return r_; }

  private:
    Point c_;
    double r_;
};

class HalfSpaceShape final : public Shape
{
  public:
    explicit HalfSpaceShape(HalfSpace h)
        : h_{h},
          anchor_{h.foot(Point(h.dim()))},
          basis_{orthonormal_complement({h.normal()}, h.dim())}
    {
    }

    int dim() const override { return h_.dim(); }
    bool contains(Point const& x) const override { return h_.distance(x) > 0; }
    double signed_distance(Point const& x) const override
    {
        return h_.distance(x);
    }
    double distance(Point const& x) const override
    {
        return std::abs(h_.distance(x));
    }
    Projection project(Point const& x) const override
    {
        return {h_.foot(x), std::abs(h_.distance(x)), h_};
    }
    HalfSpace tangent_at(Point const&) const override { return h_; }

    std::vector<ChartAxis> boundary_chart(double truncation) const override
    {
        return std::vector<ChartAxis>(basis_.size(), {-truncation, truncation});
    }
    Point boundary_point(std::span<double const> u) const override
    {
        Point z = anchor_;
        for (std::size_t k = 0; k < basis_.size(); ++k)
            z += basis_[k] * u[k];
        return z;
    }
    AxisBox sampling_box(double truncation) const override
    {
        Point lo = anchor_;
        Point hi = anchor_;
        for (int i = 0; i < dim(); ++i)
        {
            lo[i] -= truncation;
            hi[i] += truncation;
        }
        return {lo, hi};
    }
    double scale() const override { return 1.0; }

  private:
    HalfSpace h_;
    Point anchor_;
    std::vector<Point> basis_;
};

class WedgeShape final : public Shape
{
  public:
    WedgeShape(HalfSpace h1, HalfSpace h2) : h1_{h1}, h2_{h2}
    {
        Point const& n1 = h1.normal();
        Point const& n2 = h2.normal();
        double g = dot(n1, n2);
        if (std::abs(g) >= 1 - 1e-12)
            throw std::invalid_argument("wedge normals must not be parallel");
        // Ridge point in span(n1, n2) solving n1.p = c1, n2.p = c2.
        double det = 1 - g * g;
        double a = (h1.offset() - g * h2.offset()) / det;
        double b = (h2.offset() - g * h1.offset()) / det;
        ridge_ = n1 * a + n2 * b;
        d1_ = n2 - n1 * g;
        d1_ *= 1 / norm(d1_);
        d2_ = n1 - n2 * g;
        d2_ *= 1 / norm(d2_);
        ridge_basis_ = orthonormal_complement({n1, n2}, n1.dim());
    }

    int dim() const override { return h1_.dim(); }
    bool contains(Point const& x) const override
    {
        return h1_.distance(x) > 0 && h2_.distance(x) > 0;
    }
    double signed_distance(Point const& x) const override
    {
        return std::min(h1_.distance(x), h2_.distance(x));
    }
    double distance(Point const& x) const override
    {
        return std::abs(signed_distance(x));
    }
    Projection project(Point const& x) const override
    {
        double a = h1_.distance(x);
        double b = h2_.distance(x);
        Projection p1{h1_.foot(x), std::abs(a), h1_};
        Projection p2{h2_.foot(x), std::abs(b), h2_};
        if (a < b)
            return p1;
        if (b < a)
            return p2;
        return lex_less(p2.point, p1.point) ? p2 : p1;
    }
    HalfSpace tangent_at(Point const& w) const override
    {
        double tol = 1e-10 * scale();
        bool on1 = std::abs(h1_.distance(w)) <= tol;
        bool on2 = std::abs(h2_.distance(w)) <= tol;
        if (on1 && on2)
            throw std::domain_error("tangent undefined on the wedge ridge");
        return project(w).tangent;
    }

    // u[0] runs across the ridge: negative values on face 1, positive on
    // face 2; the rest run along the ridge.
    std::vector<ChartAxis> boundary_chart(double truncation) const override
    {
        return std::vector<ChartAxis>(dim() - 1, {-truncation, truncation});
    }
    Point boundary_point(std::span<double const> u) const override
    {
        Point z = u[0] <= 0 ? ridge_ + d1_ * (-u[0]) : ridge_ + d2_ * u[0];
        for (std::size_t k = 0; k < ridge_basis_.size(); ++k)
            z += ridge_basis_[k] * u[k + 1];
        return z;
    }
    AxisBox sampling_box(double truncation) const override
    {
        Point lo = ridge_;
        Point hi = ridge_;
        for (int i = 0; i < dim(); ++i)
        {
            lo[i] -= truncation;
            hi[i] += truncation;
        }
        return {lo, hi};
    }
    double scale() const override { return 1.0; }

  private:
    HalfSpace h1_;
    HalfSpace h2_;
    Point ridge_;
    Point d1_;
    Point d2_;
    std::vector<Point> ridge_basis_;
};

class HalfCapsuleShape final : public Shape
{
  public:
    HalfCapsuleShape(double r, double len, int n) : r_{r}, len_{len}, n_{n} {}

    int dim() const override { return n_; }
    bool contains(Point const& x) const override
    {
        return signed_distance(x) > 0;
    }
    double signed_distance(Point const& x) const override
    {
        return std::min(len_ - x[0], r_ - axis_distance(x));
    }

    Projection project(Point const& x) const override
    {
        Projection best;
        bool have = false;
        {
            Point z = x;
            z[0] = len_;
            keep_better(best, have,
                        {z, std::abs(len_ - x[0]),
                         HalfSpace(unit(n_, 0, -1.0), -len_)});
        }
        Point z(n_);
        Point center(n_);
        if (x[0] <= 0)
        {
            double d = norm(x);
            z = d > 0 ? x * (r_ / d) : unit(n_, 0, -r_);
        }
        else
        {
            center[0] = x[0];
            double d = axis_distance(x);
            z = d > 0 ? center + (x - center) * (r_ / d)
                      : center + unit(n_, 1, -r_);
        }
        keep_better(best, have,
                    {z, std::abs(r_ - axis_distance(x)),
                     HalfSpace::through(z, center - z)});
        return best;
    }

    HalfSpace tangent_at(Point const& w) const override
    {
        double tol = 1e-10 * scale();
        bool on_cap = std::abs(w[0] - len_) <= tol;
        bool on_side = std::abs(axis_distance(w) - r_) <= tol;
        if (on_cap && on_side)
            throw std::domain_error("tangent undefined on the half-capsule rim");
        return project(w).tangent;
    }

    std::vector<ChartAxis> boundary_chart(double) const override
    {
        return angle_chart(n_);
    }
    Point boundary_point(std::span<double const> u) const override
    {
        Point c(n_);
        c[0] = 0.5 * (len_ - r_);
        return ray_boundary(*this, c, direction_from_angles(u, n_),
                            2 * (len_ + r_));
    }
    AxisBox sampling_box(double) const override
    {
        Point lo(n_);
        Point hi(n_);
        lo[0] = -r_;
        hi[0] = len_;
        for (int i = 1; i < n_; ++i)
        {
            lo[i] = -r_;
            hi[i] = r_;
        }
        return {lo, hi};
    }
    double scale() const override { return len_; }

  private:
    // Distance to the ray {s e_1 : s >= 0}.
    double axis_distance(Point const& x) const
    {
        if (x[0] <= 0)
            return norm(x);
        double s = 0;
        for (int i = 1; i < n_; ++i)
            s += x[i] * x[i];
        return std::sqrt(s);
    }

    double r_;
    double len_;
    int n_;
};

class PowerShape final : public Shape
{
  public:
    PowerShape(double a, double p, int n) : a_{a}, p_{p}, n_{n} {}

    int dim() const override { return n_; }
    bool contains(Point const& x) const override
    {
        return x[n_ - 1] > a_ * std::pow(radial(x), p_);
    }
    double signed_distance(Point const& x) const override
    {
        double d = project(x).distance;
        return contains(x) ? d : -d;
    }

    Projection project(Point const& x) const override
    {
        double rho = radial(x);
        double h = x[n_ - 1];
        double s = nearest_radius(rho, h);
        Point z(n_);
        for (int i = 0; i < n_ - 1; ++i)
            z[i] = rho > 0 ? x[i] * (s / rho) : 0.0;
        if (rho == 0)
            z[0] = -s;
        z[n_ - 1] = a_ * std::pow(s, p_);
        double dr = s - rho;
        double dh = z[n_ - 1] - h;
        return {z, std::sqrt(dr * dr + dh * dh), tangent_at(z)};
    }

    HalfSpace tangent_at(Point const& w) const override
    {
        double rho = radial(w);
        Point g(n_);
        g[n_ - 1] = 1;
        if (rho > 0)
        {
            double k = a_ * p_ * std::pow(rho, p_ - 2);
            for (int i = 0; i < n_ - 1; ++i)
                g[i] = -k * w[i];
        }
        return HalfSpace::through(w, g);
    }

    std::vector<ChartAxis> boundary_chart(double truncation) const override
    {
        return std::vector<ChartAxis>(n_ - 1, {-truncation, truncation});
    }
    Point boundary_point(std::span<double const> u) const override
    {
        Point z(n_);
        double s2 = 0;
        for (int i = 0; i < n_ - 1; ++i)
        {
            z[i] = u[i];
            s2 += u[i] * u[i];
        }
        z[n_ - 1] = a_ * std::pow(std::sqrt(s2), p_);
        return z;
    }
    AxisBox sampling_box(double truncation) const override
    {
        Point lo(n_);
        Point hi(n_);
        for (int i = 0; i < n_ - 1; ++i)
        {
            lo[i] = -truncation;
            hi[i] = truncation;
        }
        hi[n_ - 1] = a_ * std::pow(truncation, p_);
        return {lo, hi};
    }
    double scale() const override { return std::pow(a_, -1 / (p_ - 1)); }

  private:
    double radial(Point const& x) const
    {
        double s = 0;
        for (int i = 0; i < n_ - 1; ++i)
            s += x[i] * x[i];
        return std::sqrt(s);
    }

    // Half derivative of (s - rho)^2 + (a s^p - h)^2.
    double stationarity(double s, double rho, double h) const
    {
        double sp1 = std::pow(s, p_ - 1);
        return (s - rho) + a_ * p_ * sp1 * (a_ * sp1 * s - h);
    }
    double stationarity_slope(double s, double h) const
    {
        double sp2 = std::pow(s, p_ - 2);
        double sp1 = sp2 * s;
        double f1 = a_ * p_ * sp1;
        return 1 + a_ * p_ * (p_ - 1) * sp2 * (a_ * sp1 * s - h) + f1 * f1;
    }
    double objective(double s, double rho, double h) const
    {
        double dr = s - rho;
        double dh = a_ * std::pow(s, p_) - h;
        return dr * dr + dh * dh;
    }

    // Radius of the nearest profile point in the (radial, height) plane:
    // all local minima in [0, s_max] are bracketed on a grid and refined by
    // safeguarded Newton steps.
    double nearest_radius(double rho, double h) const
    {
        double s_max = std::max(rho, std::pow(std::max(h, 0.0) / a_, 1 / p_));
        if (!(s_max > 0))
            return 0.0;
        // The minimizer can sit exactly at s_max; widen so it is bracketed.
        s_max *= 1.01;
        constexpr int kCells = 32;
        double best_s = 0;
        double best_f = objective(0, rho, h);
        double prev_s = 0;
        double prev_g = stationarity(0, rho, h);
        for (int k = 1; k <= kCells; ++k)
        {
            double s = s_max * k / kCells;
            double g = stationarity(s, rho, h);
            if (prev_g < 0 && g >= 0)
            {
                double root = refine(prev_s, s, rho, h);
                double f = objective(root, rho, h);
                if (f < best_f)
                {
                    best_f = f;
                    best_s = root;
                }
            }
            prev_s = s;
            prev_g = g;
        }
        return best_s;
    }

    double refine(double lo, double hi, double rho, double h) const
    {
        double s = 0.5 * (lo + hi);
        for (int it = 0; it < 100; ++it)
        {
            double g = stationarity(s, rho, h);
            if (g < 0)
                lo = s;
            else
                hi = s;
            double slope = stationarity_slope(s, h);
            double next = s - g / slope;
            if (!(slope > 0) || !(next > lo && next < hi))
                next = 0.5 * (lo + hi);
            if (std::abs(next - s) <= 1e-15 * std::max(1.0, s)
                || hi - lo <= 1e-15 * std::max(1.0, s))
                return next;
            s = next;
        }
        if (hi - lo > 1e-10 * std::max(1.0, s))
            throw std::runtime_error("power-domain projection did not converge");
        return s;
    }

    double a_;
    double p_;
    int n_;
};

class StadiumShape final : public Shape
{
  public:
    StadiumShape(double half_length, double r) : l_{half_length}, r_{r} {}

    int dim() const override { return 2; }
    bool contains(Point const& x) const override
    {
        return squared_distance(x, spine(x)) < r_ * r_;
    }
    double signed_distance(Point const& x) const override
    {
        return r_ - geometry::distance(x, spine(x));
    }
    double distance(Point const& x) const override
    {
        return std::abs(signed_distance(x));
    }

    Projection project(Point const& x) const override
    {
        Point c = spine(x);
        double d = geometry::distance(x, c);
        Point z{c[0], c[1] - r_};
        if (d > 0)
            z = c + (x - c) * (r_ / d);
        else if (c[0] == -l_)
            z = Point{-l_ - r_, 0.0};
        return {z, std::abs(r_ - d), HalfSpace::through(z, c - z)};
    }

    HalfSpace tangent_at(Point const& w) const override
    {
        return HalfSpace::through(w, spine(w) - w);
    }

    // Arclength, counterclockwise from (-l, -r).
    std::vector<ChartAxis> boundary_chart(double) const override
    {
        return {{0, perimeter()}};
    }
    Point boundary_point(std::span<double const> u) const override
    {
        double s = std::fmod(u[0], perimeter());
        if (s < 0)
            s += perimeter();
        double straight = 2 * l_;
        double arc = kPi * r_;
        if (s < straight)
            return {-l_ + s, -r_};
        s -= straight;
        if (s < arc)
        {
            double th = -kPi / 2 + s / r_;
            return {l_ + r_ * std::cos(th), r_ * std::sin(th)};
        }
        s -= arc;
        if (s < straight)
            return {l_ - s, r_};
        s -= straight;
        double th = kPi / 2 + s / r_;
        return {-l_ + r_ * std::cos(th), r_ * std::sin(th)};
    }
    AxisBox sampling_box(double) const override
    {
        return {Point{-l_ - r_, -r_}, Point{l_ + r_, r_}};
    }
    double scale() const override { return l_ + r_; }

  private:
    Point spine(Point const& x) const
    {
        return {std::clamp(x[0], -l_, l_), 0.0};
    }
    double perimeter() const { return 4 * l_ + 2 * kPi * r_; }

    double l_;
    double r_;
};

class EllipseShape final : public Shape
{
  public:
    EllipseShape(double a, double b) : e_{a, b} {}

    int dim() const override { return 2; }
    bool contains(Point const& x) const override
    {
        double u = x[0] / e_[0];
        double v = x[1] / e_[1];
        return u * u + v * v < 1;
    }
    double signed_distance(Point const& x) const override
    {
        double d = project(x).distance;
        return contains(x) ? d : -d;
    }

    Projection project(Point const& x) const override
    {
        // Work in the first quadrant with the major axis first.
        int major = e_[0] >= e_[1] ? 0 : 1;
        int minor = 1 - major;
        double e0 = e_[major];
        double e1 = e_[minor];
        double y0 = std::abs(x[major]);
        double y1 = std::abs(x[minor]);
        double z0 = 0;
        double z1 = 0;
        if (y1 > 0)
        {
            if (y0 > 0)
            {
                double r0 = (e0 / e1) * (e0 / e1);
                double s = lagrange_root(r0, y0 / e0, y1 / e1);
                z0 = r0 * y0 / (s + r0);
                z1 = y1 / (s + 1);
            }
            else
            {
                z0 = 0;
                z1 = e1;
            }
        }
        else
        {
            double numer = e0 * y0;
            double denom = e0 * e0 - e1 * e1;
            if (numer < denom)
            {
                double q = numer / denom;
                z0 = e0 * q;
                z1 = e1 * std::sqrt(std::max(0.0, 1 - q * q));
            }
            else
            {
                z0 = e0;
                z1 = 0;
            }
        }
        Point z(2);
        // Zero coordinates take the negative branch: the lexicographically
        // smaller of two mirror-image minimizers.
        z[major] = x[major] > 0 ? z0 : -z0;
        z[minor] = x[minor] > 0 ? z1 : -z1;
        return {z, geometry::distance(x, z), tangent_at(z)};
    }

    HalfSpace tangent_at(Point const& w) const override
    {
        Point g{-w[0] / (e_[0] * e_[0]), -w[1] / (e_[1] * e_[1])};
        return HalfSpace::through(w, g);
    }

    std::vector<ChartAxis> boundary_chart(double) const override
    {
        return {{0, 2 * kPi}};
    }
    Point boundary_point(std::span<double const> u) const override
    {
        return {e_[0] * std::cos(u[0]), e_[1] * std::sin(u[0])};
    }
    AxisBox sampling_box(double) const override
    {
        return {Point{-e_[0], -e_[1]}, Point{e_[0], e_[1]}};
    }
    double scale() const override { return std::max(e_[0], e_[1]); }

  private:
    // Root s of (r0 z0 / (s + r0))^2 + (z1 / (s + 1))^2 = 1; the left side is
    // convex and decreasing, so Newton from the left bracket end is monotone.
    static double lagrange_root(double r0, double z0, double z1)
    {
        double n0 = r0 * z0;
        double g0 = z0 * z0 + z1 * z1 - 1;
        if (g0 == 0)
            return 0;
        double lo = z1 - 1;
        double hi = g0 < 0 ? 0 : std::hypot(n0, z1) - 1;
        double s = lo;
        for (int it = 0; it < 100; ++it)
        {
            double u = n0 / (s + r0);
            double v = z1 / (s + 1);
            double f = u * u + v * v - 1;
            if (f > 0)
                lo = s;
            else
                hi = s;
            double df = -2 * (u * u / (s + r0) + v * v / (s + 1));
            double next = s - f / df;
            if (!(next >= lo && next <= hi))
                next = 0.5 * (lo + hi);
            if (std::abs(next - s) <= 1e-16 * std::max(1.0, std::abs(s)))
                return next;
            s = next;
        }
        if (hi - lo > 1e-10 * std::max(1.0, std::abs(s)))
            throw std::runtime_error("ellipse projection did not converge");
        return s;
    }

    std::array<double, 2> e_;
};

}  // namespace

double power_max_curvature(double a, double p, int n)
{
    if (p == 2)
        return 2 * a;
    auto curvature = [&](double s) {
        double f1 = a * p * std::pow(s, p - 1);
        double f2 = a * p * (p - 1) * std::pow(s, p - 2);
        double w = 1 + f1 * f1;
        double k = f2 / (w * std::sqrt(w));
        if (n >= 3)
            k = std::max(k, f1 / (s * std::sqrt(w)));
        return k;
    };
    double len = std::pow(a, -1 / (p - 1));
    double best_s = len;
    double best_k = 0;
    for (int k = -400; k <= 400; ++k)
    {
        double s = len * std::pow(10.0, k / 50.0);
        double c = curvature(s);
        if (c > best_k)
        {
            best_k = c;
            best_s = s;
        }
    }
    // Golden-section refinement on the bracketing grid cells.
    double lo = best_s * std::pow(10.0, -1 / 50.0);
    double hi = best_s * std::pow(10.0, 1 / 50.0);
    double const g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 200; ++it)
    {
        double m1 = hi - g * (hi - lo);
        double m2 = lo + g * (hi - lo);
        if (curvature(m1) > curvature(m2))
            hi = m2;
        else
            lo = m1;
    }
    return std::max(best_k, curvature(0.5 * (lo + hi)));
}

std::shared_ptr<Shape const> box_shape(Point lo, Point hi)
{
    return std::make_shared<BoxShape>(lo, hi);
}
std::shared_ptr<Shape const> ball_shape(Point center, double radius)
{
    return std::make_shared<BallShape>(center, radius);
}
std::shared_ptr<Shape const> halfspace_shape(HalfSpace h)
{
    return std::make_shared<HalfSpaceShape>(h);
}
std::shared_ptr<Shape const> wedge_shape(HalfSpace h1, HalfSpace h2)
{
    return std::make_shared<WedgeShape>(h1, h2);
}
std::shared_ptr<Shape const> half_capsule_shape(double radius, double length,
                                                int n)
{
    return std::make_shared<HalfCapsuleShape>(radius, length, n);
}
std::shared_ptr<Shape const> power_shape(double a, double p, int n)
{
    return std::make_shared<PowerShape>(a, p, n);
}
std::shared_ptr<Shape const> stadium_shape(double half_length, double radius)
{
    return std::make_shared<StadiumShape>(half_length, radius);
}
std::shared_ptr<Shape const> ellipse_shape(double a, double b)
{
    return std::make_shared<EllipseShape>(a, b);
}

}  // namespace dhk::geometry::detail
