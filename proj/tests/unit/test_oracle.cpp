#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dhk/geometry/catalog.hpp"
#include "dhk/kernels/kernels.hpp"
#include "dhk/oracle/monte_carlo.hpp"
#include "dhk/oracle/quadrature.hpp"
#include "dhk/random.hpp"

using namespace dhk::oracle;
using namespace dhk::geometry;
using dhk::kernels::gauss_kernel;

namespace
{
McOptions quick(std::int64_t paths = 20000, int steps = 64, std::uint64_t seed = 42)
{
    McOptions o;
    o.paths = paths;
    o.steps = steps;
    o.seed = seed;
    o.threads = 1;
    return o;
}

bool agrees(McEstimate const& e, double exact, double rel = 0.01)
{
    return std::abs(e.mean - exact) <= std::max(3 * e.std_error, rel * exact);
}
}  // namespace

TEST_CASE("Philox known-answer vectors")
{
    using dhk::random::philox4x32;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0})
          == std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                     {0xffffffff, 0xffffffff})
          == std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                     {0xa4093822, 0x299f31d0})
          == std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});

    dhk::random::Stream s(9, 3);
    double sum = 0;
    double sum_sq = 0;
    int const n = 200000;
    for (int i = 0; i < n; ++i)
    {
        double z = s.normal();
        sum += z;
        sum_sq += z * z;
    }
    CHECK(std::abs(sum / n) < 5 / std::sqrt(n));
    CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("bridge survival basics")
{
    auto ball = make_unit_ball(2);
    auto far = bridge_survival(ball, 0.001, Point{0, 0}, Point{0, 0}, quick());
    CHECK(std::abs(far.mean - 1) <= std::max(3 * far.std_error, 1e-12));
    auto edge = bridge_survival(ball, 0.1, Point{1, 0}, Point{0, 0}, quick());
    CHECK(edge.mean == 0.0);
    CHECK(edge.std_error == 0.0);
    CHECK_THROWS_AS(bridge_survival(ball, 0.1, Point{2, 0}, Point{0, 0}, quick()),
                    std::domain_error);
    CHECK_THROWS_AS(bridge_survival(ball, 0.1, Point{0, 0}, Point{0, 0}, quick(1000, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(bridge_survival(ball, 0.1, Point{0, 0}, Point{0, 0}, quick(50)),
                    std::invalid_argument);

    auto e = bridge_survival(ball, 0.3, Point{0.5, 0}, Point{-0.2, 0.6}, quick());
    CHECK(e.mean >= 0);
    CHECK(e.mean <= 1);
    CHECK(e.to_json()["bias_note"] == "upper-biased");
}

TEST_CASE("bridge survival is reproducible across thread counts")
{
    auto ball = make_unit_ball(2);
    McOptions a = quick(10000, 32, 7);
    McOptions b = a;
    b.threads = 3;
    auto ea = mc_kernel(ball, 0.2, Point{0.3, 0.1}, Point{-0.4, 0.2}, a);
    auto eb = mc_kernel(ball, 0.2, Point{0.3, 0.1}, Point{-0.4, 0.2}, b);
    CHECK(ea.mean == eb.mean);
    CHECK(ea.std_error == eb.std_error);
    McOptions c = a;
    c.seed = 8;
    CHECK(mc_kernel(ball, 0.2, Point{0.3, 0.1}, Point{-0.4, 0.2}, c).mean != ea.mean);
}

TEST_CASE("Monte Carlo kernel against exact kernels")
{
    HalfSpace h{Point{0, 1}, 0.0};
    auto hs = make_halfspace(h);
    for (double d : {0.2, 1.0})
    {
        double t = 0.5;
        Point x{0, d * std::sqrt(t)};
        Point y{0.4, 1.3 * d * std::sqrt(t)};
        auto e = mc_kernel(hs, t, x, y, quick());
        CHECK(agrees(e, dhk::kernels::halfspace_kernel(t, x, y, h)));
        CHECK(e.mean - 3 * e.std_error <= gauss_kernel(t, x, y));
    }

    auto interval = make_interval(0, 1);
    auto e = mc_kernel(interval, 0.1, Point{0.3}, Point{0.7}, quick(20000, 256));
    CHECK(agrees(e, dhk::kernels::interval_kernel(0.1, 0.3, 0.7, 0, 1)));
    auto r = mc_kernel(interval, 0.1, Point{0.7}, Point{0.3}, quick(20000, 256, 43));
    CHECK(std::abs(e.mean - r.mean) <= 3 * std::hypot(e.std_error, r.std_error));
}

TEST_CASE("step refinement reduces the bias near a corner")
{
    auto square = make_box(Point{0, 0}, Point{1, 1});
    auto exact = *exact_kernel_source(square);
    double t = 0.05;
    Point x{0.08, 0.1};
    Point y{0.12, 0.06};
    double p = exact(t, x, y);
    double previous = 1e300;
    for (int steps : {4, 8, 16})
    {
        auto e = mc_kernel(square, t, x, y, quick(200000, steps));
        CAPTURE(steps);
        CHECK(e.mean >= p - 3 * e.std_error);
        double err = std::abs(e.mean - p);
        CHECK(err < previous);
        previous = err;
    }
}

TEST_CASE("Chapman-Kolmogorov residuals")
{
    CHECK(ck_residual({ExactKernel::gauss, 0.7, Point{0.1, -0.3}, Point{1.2, 0.4}, 0.3}) < 1e-10);
    CHECK(ck_residual({ExactKernel::gauss, 0.2, Point{0.1, -0.3, 0.5}, Point{1.2, 0.4, 0.1}, 0.6}) < 1e-10);
    CkConfig iv{ExactKernel::interval, 0.1, Point{0.3}, Point{0.7}, 0.5};
    CHECK(ck_residual(iv) < 1e-8);
    CkConfig hc{ExactKernel::halfspace, 0.4, Point{0.2, 0.3}, Point{-0.5, 0.9}, 0.25};
    hc.halfspace = HalfSpace{Point{0.2, 1}, 0.0};
    CHECK(ck_residual(hc) < 1e-8);
    CHECK_THROWS_AS(ck_residual({ExactKernel::gauss, 1, Point{0}, Point{0}, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ck_residual({ExactKernel::gauss, 1, Point{0, 0, 0, 0}, Point{0, 0, 0, 0}, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("Chapman-Kolmogorov propositions")
{
    double t = 0.3;
    Point x{0.1, 0.2};
    Point y{0.9, -0.4};
    CkLowConfig full{t, 0.4, x, y, lerp(x, y, 0.4), 1e6 * std::sqrt(t)};
    CkCheck c = ck_low_check(full);
    CHECK(c.lhs == doctest::Approx(gauss_kernel(t, x, y)).epsilon(1e-9));
    CHECK(c.rhs == doctest::Approx(std::exp(-1.0) / 4 * gauss_kernel(t, x, y)).epsilon(1e-12));
    CHECK(c.pass);

    CkLowConfig off{t, 0.7, x, y, Point{0.5, 0.6}, 0.2};
    CHECK(ck_low_check(off).pass);

    CHECK(ckhh_constant(0, 0, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ckhh_constant(1, 0, 1) == doctest::Approx(1 + 1 / std::sqrt(std::numbers::pi)).epsilon(1e-12));
    CkHHConfig zero{t, Point{0.3, 0.2}, Point{0.1, 0.9}, {Point{1, 0}, 0.0}, {Point{0, 1}, 0.0}, 0, 0};
    CkCheck z = ck_hh_check(zero);
    CHECK(z.pass);
    CHECK(z.lhs <= z.rhs);
    CkHHConfig weighted = zero;
    weighted.exp1 = 1.5;
    weighted.exp2 = 0.5;
    CHECK(ck_hh_check(weighted).pass);
    CkHHConfig same = zero;
    same.h2 = same.h1;
    same.exp1 = 1;
    same.exp2 = 1;
    CHECK(ck_hh_check(same).pass);
}

TEST_CASE("domain monotonicity")
{
    auto small = make_interval(0, 1);
    auto large = make_interval(-1, 2);
    auto r = monotonicity_check(small, large, 0.2, Point{0.3}, Point{0.6}, MonotonicityMode::exact);
    CHECK(r.pass);
    CHECK(r.p1 < r.p2);
    auto same = monotonicity_check(small, small, 0.2, Point{0.3}, Point{0.6}, MonotonicityMode::exact);
    CHECK(same.pass);
    CHECK(same.p1 == same.p2);
    CHECK_THROWS_AS(monotonicity_check(large, small, 0.2, Point{0.3}, Point{0.6},
                                       MonotonicityMode::exact),
                    std::invalid_argument);
    auto ball = make_unit_ball(2);
    auto bigger = make_ball(Point{0, 0}, 1.5);
    auto mc = monotonicity_check(ball, bigger, 0.2, Point{0.5, 0}, Point{0, 0.6},
                                 MonotonicityMode::mc, quick(10000, 64));
    CHECK(mc.pass);
    CHECK_THROWS_AS(monotonicity_check(ball, bigger, 0.2, Point{0.5, 0}, Point{0, 0.6},
                                       MonotonicityMode::exact),
                    std::invalid_argument);
}
