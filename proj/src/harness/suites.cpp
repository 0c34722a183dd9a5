#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dhk/bounds/bounds.hpp"
#include "dhk/characteristics/characteristics.hpp"
#include "dhk/geometry/catalog.hpp"
#include "dhk/harness/experiments.hpp"
#include "dhk/kernels/kernels.hpp"
#include "dhk/oracle/monte_carlo.hpp"
#include "dhk/oracle/quadrature.hpp"
#include "dhk/random.hpp"
#include "sampling.hpp"

namespace dhk::harness
{
namespace
{
using geometry::HalfSpace;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double log_uniform(random::Stream& rng, double lo, double hi)
{
    return lo * std::pow(hi / lo, rng.uniform());
}

double uniform(random::Stream& rng, double lo, double hi)
{
    return lo + (hi - lo) * rng.uniform();
}

// Monte Carlo against an exact kernel within max(3 stderr, 1% relative).
bool agrees(Row& row, double exact)
{
    row.set("exact", exact);
    row.add_ratio("oracle/exact", "oracle", "exact");
    double tol = std::max(3 * row.value("oracle_stderr"), 0.01 * exact);
    return std::abs(row.value("oracle") - exact) <= tol;
}

std::vector<std::pair<std::string, Domain>> profile_catalog()
{
    std::vector<std::pair<std::string, Domain>> out;
    for (auto const& name : geometry::named_domains())
    {
        Domain d = geometry::make_named_domain(name);
        if (d.dim() > 1)
            out.emplace_back(name, d);
    }
    out.emplace_back("ball-3d", geometry::make_unit_ball(3));
    out.emplace_back("box-3d",
                     geometry::make_box(Point{0, 0, 0}, Point{1, 2, 3}));
    out.emplace_back("half-capsule-3d", geometry::make_half_capsule(1, 5, 3));
    out.emplace_back("power-3d", geometry::make_power_domain(1, 2, 3));
    out.emplace_back("power-p3", geometry::make_power_domain(0.5, 3, 2));
    out.emplace_back("ellipse-1-3", geometry::make_ellipse(1, 3));
    return out;
}

bool trace_monotone(characteristics::CharacteristicReport const& r)
{
    auto const& tr = r.refinement_trace;
    for (std::size_t i = 1; i < tr.size(); ++i)
        if (tr[i].q_inf > tr[i - 1].q_inf || tr[i].r_inf > tr[i - 1].r_inf)
            return false;
    return true;
}

}  // namespace

Report verify_halfspace_exactness(ExactnessOptions const& opt)
{
    Report rep;
    rep.name = "halfspace-exactness";
    rep.seed = opt.seed;
    HalfSpace h{Point{0, 1}, 0.0};
    Domain d = geometry::make_halfspace(h);
    int bad = 0;
    std::uint64_t stream = 0;
    for (double t : {0.01, 0.1, 1.0})
    {
        for (double depth : {0.2, 1.0, 5.0})
        {
            double delta = depth * std::sqrt(t);
            Point x{0, delta};
            Point y{std::sqrt(t), delta};
            Row row;
            row.label = "t=" + fmt(t) + " delta/sqrt(t)=" + fmt(depth);
            row.t = t;
            row.x = x;
            row.y = y;
            oracle::McOptions o{opt.steps, opt.paths, opt.seed * 1000003 + stream++,
                                opt.threads, false};
            row.add_oracle(oracle::mc_kernel(d, t, x, y, o));
            if (!agrees(row, kernels::halfspace_kernel(t, x, y, h)))
                ++bad;
            rep.rows.push_back(std::move(row));
        }
    }
    rep.summarize("disagreements", bad);
    rep.check("Monte Carlo matches the reflection formula on 9 configurations",
              bad == 0, std::to_string(bad) + " outside max(3 stderr, 1%)");
    return rep;
}

Report verify_interval_exactness(ExactnessOptions const& opt)
{
    Report rep;
    rep.name = "interval-exactness";
    rep.seed = opt.seed;
    Domain d = geometry::make_interval(0, 1);
    struct Config
    {
        double t, x, y;
    };
    Config const configs[] = {{0.1, 0.3, 0.7},
                              {0.02, 0.1, 0.15},
                              {0.05, 0.5, 0.5},
                              {0.2, 0.25, 0.8},
                              {0.01, 0.02, 0.03}};
    int bad = 0;
    std::uint64_t stream = 0;
    for (auto const& c : configs)
    {
        Row row;
        row.label = "t=" + fmt(c.t) + " x=" + fmt(c.x) + " y=" + fmt(c.y);
        row.t = c.t;
        row.x = Point{c.x};
        row.y = Point{c.y};
        oracle::McOptions o{opt.steps, opt.paths, opt.seed * 1000003 + stream++,
                            opt.threads, false};
        row.add_oracle(oracle::mc_kernel(d, c.t, *row.x, *row.y, o));
        if (!agrees(row, kernels::interval_kernel(c.t, c.x, c.y, 0, 1)))
            ++bad;
        rep.rows.push_back(std::move(row));
    }
    rep.summarize("disagreements", bad);
    rep.check("Monte Carlo matches the series kernel on 5 configurations",
              bad == 0, std::to_string(bad) + " outside max(3 stderr, 1%)");

    double t_switch = 1 / std::numbers::pi;
    double worst = 0;
    for (double x : {0.1, 0.3, 0.5, 0.77})
    {
        for (double y : {0.2, 0.5, 0.9})
        {
            double a = kernels::interval_kernel_images(t_switch, x, y, 0, 1);
            double b = kernels::interval_kernel_eigen(t_switch, x, y, 0, 1);
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
    }
    rep.summarize("series_switch_relative_gap", worst);
    rep.check("image and eigenfunction series agree at t = (b-a)^2/pi",
              worst <= 1e-12, "max relative gap " + fmt(worst));
    return rep;
}

Report verify_chapman_kolmogorov(std::uint64_t seed)
{
    Report rep;
    rep.name = "ck-suite";
    rep.seed = seed;
    random::Stream rng(seed, 0x636b);

    auto point = [&](int n, double scale) {
        Point p(n);
        for (int i = 0; i < n; ++i)
            p[i] = uniform(rng, -scale, scale);
        return p;
    };

    for (auto kernel : {oracle::ExactKernel::gauss, oracle::ExactKernel::halfspace,
                        oracle::ExactKernel::interval})
    {
        double worst = 0;
        for (int k = 0; k < 20; ++k)
        {
            oracle::CkConfig c;
            c.kernel = kernel;
            c.t = log_uniform(rng, 0.02, 2);
            c.alpha = uniform(rng, 0.1, 0.9);
            int n = kernel == oracle::ExactKernel::interval
                        ? 1
                        : 1 + static_cast<int>(rng.uniform() * 3);
            if (kernel == oracle::ExactKernel::interval)
            {
                c.a = uniform(rng, -1, 0);
                c.b = c.a + uniform(rng, 0.3, 2);
                c.x = Point{uniform(rng, c.a, c.b)};
                c.y = Point{uniform(rng, c.a, c.b)};
            }
            else
            {
                c.x = point(n, 1);
                c.y = point(n, 1);
                if (kernel == oracle::ExactKernel::halfspace)
                {
                    Point normal = random_direction(rng, n);
                    double lowest = std::min(geometry::dot(normal, c.x),
                                             geometry::dot(normal, c.y));
                    c.halfspace = HalfSpace{
                        normal, lowest - uniform(rng, 0.05, 1) * std::sqrt(c.t)};
                }
            }
            double r = oracle::ck_residual(c);
            worst = std::max(worst, r);
            Row row;
            row.label = std::string(oracle::to_string(kernel)) + " "
                        + std::to_string(k);
            row.t = c.t;
            row.x = c.x;
            row.y = c.y;
            row.set("alpha", c.alpha);
            row.set("residual", r);
            rep.rows.push_back(std::move(row));
        }
        std::string name(oracle::to_string(kernel));
        rep.summarize(name + "_max_residual", worst);
        rep.check("CK residual < 1e-8 (" + name + ", 20 configurations)",
                  worst < 1e-8, "max residual " + fmt(worst));
    }

    int low_fail = 0;
    double low_margin = kInf;
    for (int k = 0; k < 100; ++k)
    {
        int n = 1 + static_cast<int>(rng.uniform() * 3);
        oracle::CkLowConfig c;
        c.t = log_uniform(rng, 0.02, 2);
        c.alpha = uniform(rng, 0.1, 0.9);
        c.x = point(n, 1);
        c.y = point(n, 1);
        double st = std::sqrt(c.t);
        Point m = geometry::lerp(c.x, c.y, c.alpha);
        c.center = m + random_direction(rng, n) * (uniform(rng, 0, 3) * st);
        c.radius = log_uniform(rng, 0.05, 5) * st;
        auto res = oracle::ck_low_check(c);
        if (!res.pass)
            ++low_fail;
        low_margin = std::min(low_margin, res.lhs / (res.constant * res.rhs));
        Row row;
        row.label = "ball-mass " + std::to_string(k);
        row.t = c.t;
        row.x = c.x;
        row.y = c.y;
        row.set("lhs", res.lhs);
        row.set("rhs", res.rhs);
        row.add_ratio("lhs/rhs", "lhs", "rhs");
        rep.rows.push_back(std::move(row));
    }
    rep.summarize("ball_mass_min_lhs_over_rhs", low_margin);
    rep.check("ball-mass lower inequality (100 configurations)", low_fail == 0,
              std::to_string(low_fail) + " failures, min lhs/rhs "
                  + fmt(low_margin));

    int hh_fail = 0;
    double hh_worst = 0;
    for (int k = 0; k < 50; ++k)
    {
        int n = 2 + static_cast<int>(rng.uniform() * 2);
        oracle::CkHHConfig c;
        c.t = log_uniform(rng, 0.02, 2);
        c.x = point(n, 1);
        c.y = point(n, 1);
        double st = std::sqrt(c.t);
        auto through = [&] {
            Point normal = random_direction(rng, n);
            double lowest = std::min(geometry::dot(normal, c.x),
                                     geometry::dot(normal, c.y));
            return HalfSpace{normal, lowest - uniform(rng, 0, 2) * st};
        };
        c.h1 = through();
        c.h2 = through();
        c.exp1 = uniform(rng, 0, 2);
        c.exp2 = uniform(rng, 0, 2);
        auto res = oracle::ck_hh_check(c);
        if (!res.pass)
            ++hh_fail;
        hh_worst = std::max(hh_worst, res.lhs / (res.constant * res.rhs));
        Row row;
        row.label = "two-half-spaces " + std::to_string(k);
        row.t = c.t;
        row.x = c.x;
        row.y = c.y;
        row.set("exp1", c.exp1);
        row.set("exp2", c.exp2);
        row.set("lhs", res.lhs);
        row.set("rhs", res.rhs);
        row.set("constant", res.constant);
        row.add_ratio("lhs/rhs", "lhs", "rhs");
        rep.rows.push_back(std::move(row));
    }
    rep.summarize("two_half_spaces_max_lhs_over_K_rhs", hh_worst);
    rep.check("two-half-space weighted upper inequality (50 configurations)",
              hh_fail == 0,
              std::to_string(hh_fail) + " failures, max lhs/(K rhs) "
                  + fmt(hh_worst));
    return rep;
}

Report verify_ratio_profiles(int pairs, std::uint64_t seed)
{
    Report rep;
    rep.name = "ratio-profiles";
    rep.seed = seed;
    double worst = 0;
    std::uint64_t stream = 0;
    for (auto const& [name, d] : profile_catalog())
    {
        random::Stream rng(seed, stream++);
        int checked = 0;
        int face = 0;
        double rise = 0;
        for (int k = 0; k < pairs; ++k)
        {
            Point w = sample_boundary(d, rng);
            Point z = sample_boundary(d, rng);
            std::vector<double> prof;
            try
            {
                prof = characteristics::ratio_profile(d, w, z, 16);
            }
            catch (std::domain_error const&)
            {
                ++face;
                continue;
            }
            ++checked;
            for (std::size_t i = 1; i < prof.size(); ++i)
                rise = std::max(rise, prof[i] - prof[i - 1]);
        }
        worst = std::max(worst, rise);
        rep.summarize(name + "_checked", checked);
        rep.summarize(name + "_undefined", face);
        rep.summarize(name + "_max_rise", rise);
        // On a half-space every pair spans a boundary face.
        bool ok = rise <= 1e-8
                  && (checked > 0 || d.kind() == geometry::DomainKind::halfspace);
        rep.check("ratio profile non-increasing on " + name, ok,
                  std::to_string(checked) + " pairs, max rise " + fmt(rise));
    }
    rep.summarize("max_rise", worst);
    return rep;
}

Report verify_midpoint_comparability(Domain const& d, double q_hat,
                                     int samples, std::uint64_t seed)
{
    Report rep;
    rep.name = "midpoint-comparability";
    rep.seed = seed;
    random::Stream rng(seed, 0x6d6964);
    double lower_gap = 0;
    double upper = 0;
    int bad = 0;
    for (int k = 0; k < samples; ++k)
    {
        Point x = sample_mixed(d, rng);
        Point y = sample_mixed(d, rng);
        Point m = geometry::midpoint(x, y);
        double dd = d.distance(m);
        double dh = d.supporting_halfspace(x).distance(m);
        double tol = 1e-12 * d.scale();
        lower_gap = std::max(lower_gap, dd - dh);
        upper = std::max(upper, dh / dd);
        if (dd > dh + tol || dh > 3 / q_hat * dd + tol)
            ++bad;
    }
    rep.summarize("samples", samples);
    rep.summarize("q_hat", q_hat);
    rep.summarize("max_halfspace_over_domain", upper);
    rep.summarize("bound_3_over_q", 3 / q_hat);
    rep.check("delta_D(m) <= delta_Hx(m) <= (3/q) delta_D(m) ("
                  + d.to_json()["kind"].get<std::string>() + ")",
              bad == 0,
              std::to_string(bad) + " violations, max ratio " + fmt(upper)
                  + " vs " + fmt(3 / q_hat));
    return rep;
}

Report verify_lower_forms(int samples, std::uint64_t seed)
{
    Report rep;
    rep.name = "lower-forms";
    rep.seed = seed;
    std::vector<Domain> domains;
    for (auto const& name : geometry::named_domains())
        domains.push_back(geometry::make_named_domain(name));
    domains.push_back(geometry::make_unit_ball(3));
    domains.push_back(geometry::make_half_capsule(1, 5, 3));

    double lo = kInf;
    double hi = 0;
    int bad = 0;
    random::Stream rng(seed, 0x666f726d);
    for (int k = 0; k < samples; ++k)
    {
        Domain const& d = domains[static_cast<std::size_t>(k) % domains.size()];
        double t = log_uniform(rng, 1e-4, 10);
        Point x = sample_mixed(d, rng);
        Point y = sample_mixed(d, rng);
        auto [prod, sum] = bounds::lower_bound_improved(d, t, x, y);
        double r = prod.composition() / sum.composition();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        if (!(r >= 1.0 / 16 && r <= 16))
            ++bad;
    }
    rep.summarize("samples", samples);
    rep.summarize("ratio_min", lo);
    rep.summarize("ratio_max", hi);
    rep.check("product form / sum form in [1/16, 16]", bad == 0,
              "range [" + fmt(lo) + ", " + fmt(hi) + "] over "
                  + std::to_string(samples) + " samples");
    return rep;
}

Report verify_characteristics(std::uint64_t seed)
{
    using namespace characteristics;
    Report rep;
    rep.name = "characteristics";
    rep.seed = seed;

    auto interval = rd_estimate(geometry::make_interval(0, 1), 1000, seed);
    rep.summarize("interval_q_hat", interval.q_hat);
    rep.summarize("interval_r_hat", interval.r_hat);
    rep.check("interval q_hat = r_hat = 1",
              interval.q_hat == 1 && interval.r_hat == 1,
              "q_hat " + fmt(interval.q_hat) + ", r_hat " + fmt(interval.r_hat));

    auto ball = qd_estimate(geometry::make_unit_ball(2), 100000, seed);
    rep.summarize("ball_q_hat", ball.q_hat);
    rep.check("unit disc q_hat in [0.497, 0.503]",
              ball.q_hat >= 0.497 && ball.q_hat <= 0.503,
              "q_hat " + fmt(ball.q_hat));

    auto stadium = qd_estimate(geometry::make_stadium(), 100000, seed);
    rep.summarize("stadium_q_hat", stadium.q_hat);
    bool decreasing = stadium.refinement_trace.back().q_inf
                      < stadium.refinement_trace.front().q_inf;
    rep.check("stadium q_hat < 0.05 with a decreasing trace",
              stadium.q_hat < 0.05 && trace_monotone(stadium) && decreasing,
              "q_hat " + fmt(stadium.q_hat));

    Domain power = geometry::make_power_domain(1, 2, 2);
    auto p1 = rd_estimate(power, 5000, seed);
    auto p4 = rd_estimate(power, 20000, seed);
    double pc = std::abs(p4.r_hat - p1.r_hat) / p1.r_hat;
    rep.summarize("power_r_hat", p4.r_hat);
    rep.summarize("power_r_change", pc);
    rep.summarize("power_truncation", p4.truncation);
    rep.check("power domain r_hat > 0.02, stable on 4x budget",
              p4.r_hat > 0.02 && pc < 0.05,
              "r_hat " + fmt(p1.r_hat) + " -> " + fmt(p4.r_hat));

    Domain ellipse = geometry::make_ellipse(2, 1);
    auto e1 = qd_estimate(ellipse, 20000, seed);
    auto e4 = qd_estimate(ellipse, 80000, seed);
    double ec = std::abs(e4.q_hat - e1.q_hat) / e1.q_hat;
    rep.summarize("ellipse_q_hat", e4.q_hat);
    rep.summarize("ellipse_q_change", ec);
    rep.check("ellipse q_hat > 0.1, stable on 4x budget",
              e4.q_hat > 0.1 && ec < 0.05,
              "q_hat " + fmt(e1.q_hat) + " -> " + fmt(e4.q_hat));
    return rep;
}

std::vector<std::string> suite_names()
{
    return {"ck",     "exact",  "profiles",        "lemma",
            "forms",  "characteristics", "all"};
}

Report run_suite(std::string const& name, std::uint64_t seed)
{
    auto merge = [](Report& into, Report const& part) {
        for (auto const& c : part.checks)
            into.checks.push_back(c);
        for (auto const& [k, v] : part.summary)
            into.summarize(part.name + "." + k, v);
    };
    Report rep;
    rep.name = "verify-" + name;
    rep.seed = seed;
    bool known = false;
    if (name == "ck" || name == "all")
    {
        known = true;
        merge(rep, verify_chapman_kolmogorov(seed));
    }
    if (name == "exact" || name == "all")
    {
        known = true;
        ExactnessOptions opt;
        opt.seed = seed;
        merge(rep, verify_halfspace_exactness(opt));
        merge(rep, verify_interval_exactness(opt));
    }
    if (name == "profiles" || name == "all")
    {
        known = true;
        merge(rep, verify_ratio_profiles(1000, seed));
    }
    if (name == "lemma" || name == "all")
    {
        known = true;
        for (Domain d : {geometry::make_unit_ball(2), geometry::make_ellipse(2, 1)})
        {
            auto q = characteristics::qd_estimate(d, 100000, seed);
            auto part = verify_midpoint_comparability(d, q.q_hat, 10000, seed);
            part.name += "." + d.to_json()["kind"].get<std::string>();
            merge(rep, part);
        }
    }
    if (name == "forms" || name == "all")
    {
        known = true;
        merge(rep, verify_lower_forms(100000, seed));
    }
    if (name == "characteristics" || name == "all")
    {
        known = true;
        merge(rep, verify_characteristics(seed));
    }
    if (!known)
        throw std::invalid_argument("unknown suite '" + name + "'");
    return rep;
}

}  // namespace dhk::harness
