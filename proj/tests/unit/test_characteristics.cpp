#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "dhk/characteristics/characteristics.hpp"
#include "dhk/characteristics/nelder_mead.hpp"
#include "dhk/geometry/catalog.hpp"

using namespace dhk::characteristics;
using namespace dhk::geometry;

namespace
{
Point random_boundary(Domain const& d, std::mt19937_64& rng)
{
    std::vector<double> u;
    for (auto const& ax : d.boundary_chart(4))
        u.push_back(std::uniform_real_distribution<double>(ax.lo, ax.hi)(rng));
    return d.boundary_point(u);
}

bool trace_non_increasing(CharacteristicReport const& r)
{
    for (std::size_t i = 1; i < r.refinement_trace.size(); ++i)
    {
        auto const& a = r.refinement_trace[i - 1];
        auto const& b = r.refinement_trace[i];
        if (b.q_inf > a.q_inf || b.r_inf > a.r_inf || b.samples < a.samples)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("nelder-mead finds the Rosenbrock minimum")
{
    auto f = [](std::vector<double> const& x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    auto res = nelder_mead(f, {-1.2, 1.0}, {0.1, 0.1}, {1e-10, 5000});
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.value < 1e-12);
}

TEST_CASE("ratio profile on antipodal points of the unit disc")
{
    auto ball = make_unit_ball(2);
    int const grid = 8;
    auto prof = ratio_profile(ball, Point{1, 0}, Point{-1, 0}, grid);
    REQUIRE(prof.size() == grid);
    for (int k = 1; k <= grid; ++k)
    {
        double a = static_cast<double>(k) / grid;
        double oracle = (1 - std::abs(1 - 2 * a)) / (2 * a);
        CHECK(prof[k - 1] == doctest::Approx(oracle).epsilon(1e-12));
    }
    CHECK(prof[5] == doctest::Approx(1.0 / 3));
    CHECK(prof.back() == 0.0);

    CHECK_THROWS_AS(ratio_profile(ball, Point{1, 0}, Point{1, 0}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(ratio_profile(ball, Point{0.5, 0}, Point{-1, 0}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(ratio_profile(ball, Point{1, 0}, Point{-1, 0}, 1),
                    std::invalid_argument);
    auto square = make_box(Point{-1, -1}, Point{1, 1});
    CHECK_THROWS_AS(ratio_profile(square, Point{1, 0}, Point{1, 0.5}, 4),
                    std::domain_error);
}

TEST_CASE("ratio profiles are non-increasing")
{
    std::mt19937_64 rng(5);
    for (auto const& name : named_domains())
    {
        Domain d = make_named_domain(name);
        if (d.dim() == 1)
            continue;
        CAPTURE(name);
        int checked = 0;
        for (int k = 0; k < 200; ++k)
        {
            Point w = random_boundary(d, rng);
            Point z = random_boundary(d, rng);
            std::vector<double> prof;
            try
            {
                prof = ratio_profile(d, w, z, 16);
            }
            catch (std::domain_error const&)
            {
                continue;
            }
            ++checked;
            for (std::size_t i = 1; i < prof.size(); ++i)
                CHECK(prof[i] <= prof[i - 1] + 1e-8);
        }
        // Every pair on a half-space lies in its boundary hyperplane.
        if (d.kind() == DomainKind::halfspace)
            CHECK(checked == 0);
        else
            CHECK(checked > 0);
    }
}

TEST_CASE("interval characteristics are exactly one")
{
    auto rep = rd_estimate(make_interval(0, 1), 1000, 1);
    CHECK(rep.q_hat == 1.0);
    CHECK(rep.r_hat == 1.0);
    CHECK(rep.argmin_pair.first.dim() == 1);
    auto wide = rd_estimate(make_interval(0, 10), 1000, 1);
    CHECK(wide.r_hat == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unit disc characteristic is one half")
{
    auto ball = make_unit_ball(2);
    auto rep = qd_estimate(ball, 100000, 11);
    CHECK(rep.q_hat >= 0.497);
    CHECK(rep.q_hat <= 0.503);
    // The disc is never deeper than 1, so the segment branch never applies.
    CHECK(rep.r_hat == rep.q_hat);
    CHECK(trace_non_increasing(rep));
    CHECK(rep.samples >= 100000);
}

TEST_CASE("reports do not depend on the thread count")
{
    auto d = make_ellipse(2, 1);
    EstimateOptions opt;
    opt.budget = 5000;
    opt.seed = 3;
    opt.threads = 1;
    auto a = estimate(d, opt);
    opt.threads = 3;
    auto b = estimate(d, opt);
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK_THROWS_AS(qd_estimate(d, 10, 1), std::invalid_argument);
}

TEST_CASE("q is scale invariant")
{
    auto a = qd_estimate(make_ellipse(2, 1), 20000, 4);
    auto b = qd_estimate(make_ellipse(6, 3), 20000, 4);
    CHECK(b.q_hat == doctest::Approx(a.q_hat).epsilon(0.02));
    CHECK(a.q_hat <= a.r_hat + 1e-9);
}

TEST_CASE("classification")
{
    auto ball = make_unit_ball(2);
    auto rep = characterize(ball, 10000, 1);
    CHECK(rep.classification == Classification::s_q);

    auto stadium = make_stadium();
    auto st = characterize(stadium, 10000, 1);
    CHECK(st.q_hat < 0.05);
    CHECK(st.classification == Classification::neither);
    CHECK(trace_non_increasing(st));
    CHECK(st.skipped > 0);

    CHECK_THROWS_AS(classify(ball, 0.02, {rep}), std::invalid_argument);
    CHECK_THROWS_AS(classify(ball, 0.02, {rep, st}), std::invalid_argument);
}

TEST_CASE("power domain segment characteristic")
{
    auto power = make_power_domain(1, 2, 2);
    auto rep = characterize(power, 2000, 1);
    MESSAGE("power r_hat " << rep.r_hat << " q_hat " << rep.q_hat
                           << " truncation " << rep.truncation);
    CHECK(rep.r_hat > 0.02);
    CHECK(rep.classification == Classification::s_r);
}
