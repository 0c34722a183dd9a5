#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "dhk/geometry/catalog.hpp"

using namespace dhk::geometry;

namespace
{
// Dense grid followed by golden-section refinement around the best cell.
double grid_min(std::function<double(double)> const& f, double lo, double hi,
                int cells = 200000)
{
    double best = lo;
    double best_f = f(lo);
    double h = (hi - lo) / cells;
    for (int k = 1; k <= cells; ++k)
    {
        double s = lo + k * h;
        double v = f(s);
        if (v < best_f)
        {
            best_f = v;
            best = s;
        }
    }
    double a = best - h;
    double b = best + h;
    double const g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 200; ++it)
    {
        double m1 = b - g * (b - a);
        double m2 = a + g * (b - a);
        if (f(m1) < f(m2))
            b = m2;
        else
            a = m1;
    }
    return 0.5 * (a + b);
}

Point sample_interior(Domain const& d, std::mt19937_64& rng, double trunc = 4)
{
    AxisBox box = d.sampling_box(trunc);
    for (;;)
    {
        Point x(d.dim());
        for (int i = 0; i < d.dim(); ++i)
            x[i] = std::uniform_real_distribution<double>(box.lo[i],
                                                          box.hi[i])(rng);
        if (d.contains(x))
            return x;
    }
}

Point sample_boundary(Domain const& d, std::mt19937_64& rng, double trunc = 4)
{
    auto axes = d.boundary_chart(trunc);
    std::vector<double> u;
    for (auto const& ax : axes)
        u.push_back(std::uniform_real_distribution<double>(ax.lo, ax.hi)(rng));
    return d.boundary_point(u);
}

std::vector<Domain> catalog()
{
    return {
        make_interval(0, 1),
        make_box(Point{-1, -1}, Point{1, 1}),
        make_box(Point{0, 0, 0}, Point{1, 2, 3}),
        make_unit_ball(2),
        make_unit_ball(3),
        make_halfspace({Point{0.3, 1}, 0.2}),
        make_wedge({Point{1, 0}, 0.0}, {Point{0, 1}, 0.0}),
        make_wedge({Point{1, 0}, 0.0}, {Point{-1, 1}, 0.0}),
        make_half_capsule(1, 3, 2),
        make_half_capsule(1, 5, 3),
        make_power_domain(1, 2, 2),
        make_power_domain(0.5, 3, 2),
        make_power_domain(1, 2, 3),
        make_stadium(),
        make_ellipse(2, 1),
        make_ellipse(1, 3),
    };
}

}  // namespace

TEST_CASE("contains follows the open-set convention")
{
    CHECK(make_unit_ball(2).contains(Point{0, 0}));
    CHECK_FALSE(make_unit_ball(2).contains(Point{1, 0}));
    CHECK(make_power_domain(1, 2, 2).contains(Point{1, 1.5}));
    CHECK_THROWS_AS(make_unit_ball(2).contains(Point{0, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("distance to the boundary")
{
    CHECK(make_unit_ball(2).distance(Point{0, 0}) == 1.0);
    CHECK(make_interval(0, 1).distance(Point{0.3}) == doctest::Approx(0.3));
    CHECK_THROWS_AS(make_unit_ball(2).distance(Point{2, 0}), std::domain_error);

    auto power = make_power_domain(1, 2, 2);
    for (Point x : {Point{0, 0.5}, Point{0, 1}, Point{0.4, 2.0}, Point{-1.2, 1.5}})
    {
        auto f = [&](double s) {
            return std::hypot(x[0] - s, x[1] - s * s);
        };
        double oracle = f(grid_min(f, -3, 3));
        CHECK(power.distance(x) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("projection onto the boundary")
{
    auto ball = make_unit_ball(2);
    Projection p = ball.project(Point{0.5, 0});
    CHECK(p.point[0] == doctest::Approx(1.0));
    CHECK(p.point[1] == doctest::Approx(0.0));
    CHECK(p.distance == doctest::Approx(0.5));

    auto square = make_box(Point{-1, -1}, Point{1, 1});
    Projection c = square.project(Point{0, 0});
    CHECK(c.distance == 1.0);
    CHECK(std::abs(c.point[0]) + std::abs(c.point[1]) == 1.0);

    auto ellipse = make_ellipse(2, 1);
    auto f = [](double th) {
        return std::hypot(1 - 2 * std::cos(th), std::sin(th));
    };
    double th = grid_min(f, -std::numbers::pi, std::numbers::pi);
    Projection e = ellipse.project(Point{1, 0});
    CHECK(e.distance == doctest::Approx(f(th)).epsilon(1e-8));
    CHECK(e.distance == doctest::Approx(0.816496580927726).epsilon(1e-10));
    CHECK(e.point[0] == doctest::Approx(4.0 / 3).epsilon(1e-8));
    CHECK(std::abs(e.point[1]) == doctest::Approx(0.7453559924999299).epsilon(1e-8));

    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k)
    {
        Point x = sample_interior(ellipse, rng);
        auto g = [&](double s) {
            return std::hypot(x[0] - 2 * std::cos(s), x[1] - std::sin(s));
        };
        double oracle = g(grid_min(g, -std::numbers::pi, std::numbers::pi, 20000));
        CHECK(ellipse.distance(x) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("supporting half-spaces")
{
    auto ball = make_unit_ball(2);
    HalfSpace h = ball.supporting_halfspace(Point{0.5, 0});
    CHECK(h.normal()[0] == doctest::Approx(-1.0));
    CHECK(h.normal()[1] == doctest::Approx(0.0));
    CHECK(h.offset() == doctest::Approx(-1.0));

    HalfSpace base{Point{0, 2}, 1.0};
    auto hs = make_halfspace(base);
    for (Point x : {Point{0, 1}, Point{3, 0.6}, Point{-2, 7}})
    {
        HalfSpace s = hs.supporting_halfspace(x);
        CHECK(s.normal() == base.normal());
        CHECK(s.offset() == base.offset());
    }

    auto power = make_power_domain(1, 2, 2);
    HalfSpace t = power.supporting_halfspace(Point{1, 1});
    CHECK(t.normal()[0] == doctest::Approx(-2 / std::sqrt(5.0)));
    CHECK(t.normal()[1] == doctest::Approx(1 / std::sqrt(5.0)));
    CHECK(t.distance(Point{0, 1}) == doctest::Approx(2 / std::sqrt(5.0)));

    auto wedge = make_wedge({Point{1, 0}, 0.0}, {Point{0, 1}, 0.0});
    CHECK_THROWS_AS(wedge.supporting_halfspace(Point{0, 0}), std::domain_error);
    auto square = make_box(Point{-1, -1}, Point{1, 1});
    CHECK_THROWS_AS(square.supporting_halfspace(Point{1, 1}), std::domain_error);
}

TEST_CASE("angle between half-spaces")
{
    HalfSpace a{Point{1, 0}, 0.0};
    HalfSpace b{Point{0, 1}, 0.0};
    HalfSpace c{Point{-1, 0}, -1.0};
    CHECK(angle_between(a, b) == doctest::Approx(std::numbers::pi / 2));
    CHECK(angle_between(a, a) == doctest::Approx(std::numbers::pi));
    CHECK(angle_between(a, c) == doctest::Approx(0.0));
    CHECK_THROWS_AS(angle_between(a, HalfSpace{Point{1, 0, 0}, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("catalog metadata and validation")
{
    CHECK(make_half_capsule(1, 3, 2).inner_ball_radius() == 1.0);
    auto stadium = make_stadium();
    CHECK(stadium.bounded());
    CHECK_FALSE(stadium.strictly_convex());
    auto power = make_power_domain(1, 2, 2);
    CHECK_FALSE(power.bounded());
    CHECK(power.strictly_convex());
    CHECK(power.inner_ball_radius() == doctest::Approx(0.5));
    CHECK(make_ellipse(2, 1).inner_ball_radius() == doctest::Approx(0.5));

    CHECK_THROWS_AS(make_half_capsule(2, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_power_domain(1, 1.5, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_power_domain(1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_wedge({Point{1, 0}, 0.0}, {Point{2, 0}, 1.0}),
                    std::invalid_argument);

    for (auto const& name : named_domains())
    {
        Domain d = make_named_domain(name);
        Domain again = make_domain(d.to_json());
        CHECK(again.to_json() == d.to_json());
    }
    CHECK_THROWS_AS(make_named_domain("torus"), std::invalid_argument);
    CHECK(make_domain(nlohmann::json::parse(
                          R"({"kind":"interval","params":{"a":0,"b":2}})"))
              .distance(Point{0.5})
          == doctest::Approx(0.5));
}

TEST_CASE("sampled geometric invariants hold on every catalog domain")
{
    std::mt19937_64 rng(12345);
    for (Domain const& d : catalog())
    {
        CAPTURE(d.to_json().dump());
        for (int k = 0; k < 500; ++k)
        {
            Point x = sample_interior(d, rng);
            Projection p = d.project(x);
            CHECK(distance(x, p.point) == doctest::Approx(p.distance).epsilon(1e-9));
            CHECK(d.on_boundary(p.point));
            HalfSpace h = d.supporting_halfspace(x);
            CHECK(std::abs(h.distance(x) - d.distance(x)) < 1e-9);
        }
        for (int k = 0; k < 200; ++k)
        {
            Point w = sample_boundary(d, rng);
            REQUIRE(d.on_boundary(w));
            HalfSpace h;
            try
            {
                h = d.supporting_halfspace(w);
            }
            catch (std::domain_error const&)
            {
                continue;
            }
            for (int j = 0; j < 20; ++j)
                CHECK(h.distance(sample_interior(d, rng)) >= -1e-12);
        }
    }
}

TEST_CASE("convexity sampling")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0, 1);
    for (Domain const& d : catalog())
    {
        CAPTURE(d.to_json().dump());
        int failures = 0;
        for (int k = 0; k < 10000; ++k)
        {
            Point x = sample_interior(d, rng);
            Point y = sample_interior(d, rng);
            if (!d.in_closure(lerp(x, y, unit(rng))))
                ++failures;
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("inner-ball sampling at the declared radius")
{
    std::mt19937_64 rng(2024);
    for (Domain const& d : catalog())
    {
        CAPTURE(d.to_json().dump());
        double r = d.inner_ball_radius();
        if (r == 0)
            continue;
        if (std::isinf(r))
            r = 10;
        int tested = 0;
        for (int k = 0; k < 1000; ++k)
        {
            Point z = sample_boundary(d, rng);
            // The flat end of the half-capsule meets the side in a rim that
            // admits no inner ball; only the smooth part is checked.
            if (d.kind() == DomainKind::half_capsule
                && z[0] > d.params()["L"].get<double>() - r)
                continue;
            HalfSpace h;
            try
            {
                h = d.supporting_halfspace(z);
            }
            catch (std::domain_error const&)
            {
                continue;
            }
            Point c = z + h.normal() * r;
            CHECK(d.distance(c) >= r * (1 - 1e-9));
            ++tested;
        }
        CHECK(tested > 100);
    }
}

TEST_CASE("point parsing")
{
    CHECK(parse_point("0.5, -1e-3") == Point{0.5, -1e-3});
    CHECK_THROWS_AS(parse_point("1,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point(""), std::invalid_argument);
    CHECK(format_point(Point{1, 2}, ';') == "1.000000000000e+00;2.000000000000e+00");
}
