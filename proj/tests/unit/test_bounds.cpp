#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "dhk/bounds/bounds.hpp"
#include "dhk/geometry/catalog.hpp"
#include "dhk/kernels/kernels.hpp"

using namespace dhk::bounds;
using namespace dhk::geometry;
using dhk::kernels::gauss_kernel;
using dhk::kernels::halfspace_kernel;
using std::numbers::pi;

namespace
{
Point random_in(Domain const& d, std::mt19937_64& rng, double trunc = 3)
{
    AxisBox box = d.sampling_box(trunc);
    for (;;)
    {
        Point x(d.dim());
        for (int i = 0; i < d.dim(); ++i)
            x[i] = std::uniform_real_distribution<double>(box.lo[i], box.hi[i])(rng);
        if (d.contains(x))
            return x;
    }
}

void check_reconstructs(BoundBreakdown const& b)
{
    CHECK(b.value == doctest::Approx(b.constant * b.gaussian * b.composition()).epsilon(1e-12));
    for (auto const& f : b.factors)
    {
        CHECK(f.value >= 0);
        CHECK(f.value <= 1);
    }
}
}  // namespace

TEST_CASE("upper bound factors")
{
    double t = 0.3;
    auto hs = make_named_domain("halfspace");
    Point x{0.2, std::sqrt(t)};
    Point y{1.5, std::sqrt(t)};
    CHECK(upper_bound_main(hs, t, x, y).composition() == doctest::Approx(2.0));

    auto ball = make_unit_ball(2);
    auto b = upper_bound_main(ball, 0.999, Point{0, 0}, Point{0, 0}, 1.0);
    CHECK(b.composition() == 2.0);
    auto c = upper_bound_main(make_unit_ball(2), 0.5, Point{0, 0}, Point{0, 0});
    CHECK(c.value == doctest::Approx(2 / (4 * pi * 0.5)));
    CHECK_THROWS_AS(upper_bound_main(ball, 1.0, Point{0, 0}, Point{0, 0}, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(upper_bound_main(ball, 0.5, Point{2, 0}, Point{0, 0}),
                    std::domain_error);
    CHECK_THROWS_AS(upper_bound_main(make_named_domain("square"), 0.5,
                                     Point{0, 0}, Point{0, 0}),
                    std::invalid_argument);

    Point p{0.3, -0.2};
    auto main = upper_bound_main(ball, 0.2, p, p);
    auto mid = upper_bound_midpoint(ball, 0.2, p, p);
    CHECK(main.value == mid.value);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 2000; ++k)
    {
        double tt = 0.01 + 0.98 * u(rng);
        Point a = random_in(hs, rng);
        Point q = random_in(hs, rng);
        auto m1 = upper_bound_main(hs, tt, a, q);
        auto m2 = upper_bound_midpoint(hs, tt, a, q);
        check_reconstructs(m1);
        check_reconstructs(m2);
        double dmid = 0.5 * (a[1] + q[1]);
        CHECK(m2.factor("min_hx_mid") == doctest::Approx(std::min(1.0, a[1] * dmid / tt)));
        CHECK(m2.value >= m1.value / 4);
        CHECK(m2.value <= m1.value * 4);
        // Exact sandwich from 1 - e^{-u} between (1 - 1/e)(1 ^ u) and 1 ^ u.
        double exact = halfspace_kernel(tt, a, q, {Point{0, 1}, 0.0});
        CHECK(lower_bound_basic(hs, tt, a, q).value * (1 - std::exp(-1.0)) <= exact * (1 + 1e-12));
        CHECK(exact <= 2 * m1.value);
        CHECK(m1.composition() <= 2);
    }
}

TEST_CASE("obtuse wedge bound")
{
    HalfSpace h1{Point{1, 0}, 0.0};
    HalfSpace h2{Point{0, 1}, 0.0};
    double t = 0.4;
    auto same = wedge_obtuse_upper(h1, h1, t, Point{0.3, 0}, Point{0.5, 2});
    double m = std::min(1.0, 0.3 * 0.5 / t);
    CHECK(same.composition() == doctest::Approx(m + m * m));
    double s = 1.5 * std::sqrt(t);
    CHECK(wedge_obtuse_upper(h1, h2, t, Point{s, s}, Point{s, s}).composition() == 2.0);
    HalfSpace acute{Point{-1, 1}, 0.0};
    CHECK_THROWS_AS(wedge_obtuse_upper(h1, acute, t, Point{1, 2}, Point{1, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(wedge_obtuse_upper(h1, h2, t, Point{-1, 2}, Point{1, 2}),
                    std::domain_error);
}

TEST_CASE("lower bounds")
{
    auto ball = make_unit_ball(2);
    CHECK(lower_bound_basic(ball, 0.5, Point{0, 0}, Point{0, 0}).composition() == 1.0);
    double v = lower_bound_basic(ball, 0.5, Point{0, 0}, Point{1 - 1e-9, 0}).value;
    CHECK(v < 1e-8);
    auto [prod, sum] = lower_bound_improved(ball, 1.0, Point{0, 0}, Point{0, 0});
    CHECK(prod.composition() == 1.0);
    CHECK(sum.composition() == 2.0);

    // Points on opposite ends of the flat side of the stadium.
    auto stadium = make_stadium();
    auto [p2, s2] = lower_bound_improved(stadium, 0.1, Point{-0.9, -1 + 1e-3},
                                         Point{0.9, -1 + 1e-3});
    CHECK(s2.factor("min_x_mid") == doctest::Approx(1e-5));
    check_reconstructs(p2);
    check_reconstructs(s2);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3, 0);
    for (auto const& name : named_domains())
    {
        Domain d = make_named_domain(name);
        for (int k = 0; k < 2000; ++k)
        {
            double tt = std::pow(10.0, u(rng));
            auto [a, b] = lower_bound_improved(d, tt, random_in(d, rng), random_in(d, rng));
            CHECK(a.composition() <= 16 * b.composition());
            CHECK(b.composition() <= 16 * a.composition());
            CHECK(b.composition() <= 2);
        }
    }
}

TEST_CASE("Zhang-type bounds")
{
    double t = 0.2;
    Point x{0.1, 0.4};
    Point y{0.5, -0.3};
    double c = 1 / (4 * pi);
    auto z = zhang_bound(t, x, y, 0.3, 0.2, {c, 0.25, c, 0.25});
    auto ball = make_ball(Point{0, 0}, 10);
    double expected = gauss_kernel(t, x, y) * std::min(1.0, 0.3 * 0.2 / t);
    CHECK(z.lower == doctest::Approx(expected).epsilon(1e-13));
    CHECK(z.upper == doctest::Approx(expected).epsilon(1e-13));

    double r = std::sqrt(40 * t);
    auto w = zhang_bound(t, Point{0, 0}, Point{r, 0}, 1, 1, {1, 0.5, 2, 0.25});
    CHECK(w.upper / w.lower == doctest::Approx(2 * std::exp(10.0)).epsilon(1e-12));
    CHECK_THROWS_AS(zhang_bound(t, x, y, 1, 1, {0, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("two-sided factors")
{
    auto ball = make_unit_ball(2);
    CHECK(two_sided_factor(ball, 1, Point{0, 0}, Point{0, 0}, TwoSidedVariant::sq).composition() == 2.0);
    CHECK(two_sided_factor(ball, 1, Point{0, 0}, Point{0, 0}, TwoSidedVariant::sr).composition() == 2.0);
    CHECK_THROWS_AS(two_sided_factor(make_stadium(), 1, Point{0, 0}, Point{0, 0},
                                     TwoSidedVariant::sq),
                    std::invalid_argument);

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-3, 0);
    for (int k = 0; k < 5000; ++k)
    {
        double t = std::pow(10.0, u(rng));
        Point x = random_in(ball, rng);
        Point y = random_in(ball, rng);
        double sq = two_sided_factor(ball, t, x, y, TwoSidedVariant::sq).composition();
        double sr = two_sided_factor(ball, t, x, y, TwoSidedVariant::sr).composition();
        CHECK(sq <= 16 * sr);
        CHECK(sq >= sr / 16);
    }
}

TEST_CASE("factors are invariant under parabolic scaling")
{
    std::mt19937_64 rng(10);
    for (double lambda : {0.1, 3.0, 17.0})
    {
        auto d1 = make_ellipse(2, 1);
        auto d2 = make_ellipse(2 * lambda, lambda);
        for (int k = 0; k < 200; ++k)
        {
            Point x = random_in(d1, rng);
            Point y = random_in(d1, rng);
            double t = 0.05;
            auto [a1, b1] = lower_bound_improved(d1, t, x, y);
            auto [a2, b2] = lower_bound_improved(d2, lambda * lambda * t, x * lambda, y * lambda);
            CHECK(a2.composition() == doctest::Approx(a1.composition()).epsilon(1e-9));
            CHECK(b2.composition() == doctest::Approx(b1.composition()).epsilon(1e-9));
            auto u1 = upper_bound_main(d1, t, x, y, 1.0);
            auto u2 = upper_bound_main(d2, lambda * lambda * t, x * lambda, y * lambda, 1e6);
            CHECK(u2.composition() == doctest::Approx(u1.composition()).epsilon(1e-9));
        }
    }
}

TEST_CASE("exit density from the half-line kernel")
{
    auto line = make_halfspace({Point{1}, 0.0});
    KernelSource exact = [](double t, Point const& a, Point const& b) {
        return halfspace_kernel(t, a, b, {Point{1}, 0.0});
    };
    double x = 0.7;
    double eps = 1e-3;
    boost::math::quadrature::exp_sinh<double> integrator;
    double total = integrator.integrate([&](double t) {
        return exit_density_estimate(line, t, Point{x}, Point{0.0}, eps, exact);
    });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));

    for (double t : {0.1, 0.5, 2.0})
    {
        double limit = x * std::pow(4 * pi, -0.5) * std::pow(t, -1.5) * std::exp(-x * x / (4 * t));
        double est = exit_density_estimate(line, t, Point{x}, Point{0.0}, 1e-7, exact);
        CHECK(est == doctest::Approx(limit).epsilon(1e-6));
        double half = exit_density_estimate(line, t, Point{x}, Point{0.0}, 1e-7, exact, 0.5);
        CHECK(half == doctest::Approx(limit / 2).epsilon(1e-6));
    }
    CHECK(exit_density_estimate(line, 1e-3, Point{5.0}, Point{0.0}, 1e-3, exact) < 1e-100);
    CHECK_THROWS_AS(exit_density_estimate(line, 1, Point{x}, Point{0.1}, 1e-3, exact),
                    std::domain_error);
    auto ball = make_unit_ball(2);
    CHECK_THROWS_AS(exit_density_estimate(ball, 1, Point{0, 0}, Point{1, 0}, 0.3, exact),
                    std::invalid_argument);
}
