// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dhk/characteristics/characteristics.hpp"
#include "dhk/geometry/catalog.hpp"
#include "dhk/harness/experiments.hpp"
#include "dhk/harness/report.hpp"

using namespace dhk;
using harness::Report;

namespace
{
struct Outcome
{
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Folds the named checks of a report (all when names is empty) into one
// outcome; failing check details are kept.
Outcome from_checks(Report const& rep, std::vector<std::string> const& prefixes = {})
{
    Outcome o;
    int used = 0;
    for (auto const& c : rep.checks)
    {
        bool wanted = prefixes.empty();
        for (auto const& p : prefixes)
            wanted = wanted || c.name.rfind(p, 0) == 0;
        if (!wanted)
            continue;
        ++used;
        if (!c.pass)
        {
            o.pass = false;
            o.detail += (o.detail.empty() ? "" : "; ") + c.name + ": " + c.detail;
        }
    }
    if (used == 0)
    {
        o.pass = false;
        o.detail = "no matching checks in " + rep.name;
    }
    else if (o.pass)
    {
        o.detail = std::to_string(used) + " checks";
    }
    return o;
}

void append(Outcome& o, std::string const& s)
{
    o.detail += (o.detail.empty() ? "" : ", ") + s;
}

std::string slurp(std::filesystem::path const& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

int main()
{
    std::uint64_t const seed = 1;
    int failures = 0;
    auto report = [&](int id, char const* name, Outcome const& o, double secs) {
        std::printf("%s  %2d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", id,
                    name, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass)
            ++failures;
    };
    auto run = [&](int id, char const* name, std::function<Outcome()> const& fn) {
        auto start = Clock::now();
        Outcome o;
        try
        {
            o = fn();
        }
        catch (std::exception const& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        report(id, name, o, seconds_since(start));
    };

    harness::ExactnessOptions exact;
    exact.paths = 100000;
    exact.steps = 256;
    exact.seed = seed;

    run(1, "half-space exactness", [&] {
        auto start = Clock::now();
        Outcome o = from_checks(harness::verify_halfspace_exactness(exact));
        double secs = seconds_since(start);
        o.pass = o.pass && secs < 60;
        append(o, "runtime " + fmt(secs) + " s of 60");
        return o;
    });

    run(2, "interval exactness", [&] {
        return from_checks(harness::verify_interval_exactness(exact));
    });

    // One suite run covers criteria 3 and 4; the runtime bound applies to it.
    auto ck_start = Clock::now();
    Report ck;
    std::string ck_error;
    try
    {
        ck = harness::verify_chapman_kolmogorov(seed);
    }
    catch (std::exception const& e)
    {
        ck_error = e.what();
    }
    double ck_secs = seconds_since(ck_start);
    auto ck_part = [&](std::vector<std::string> const& prefixes) {
        if (!ck_error.empty())
            return Outcome{false, "exception: " + ck_error};
        return from_checks(ck, prefixes);
    };
    report(3, "Chapman-Kolmogorov residuals", ck_part({"CK residual"}), ck_secs);
    {
        Outcome o = ck_part({"ball-mass", "two-half-space"});
        o.pass = o.pass && ck_secs < 300;
        append(o, "runtime " + fmt(ck_secs) + " s of 300");
        report(4, "Chapman-Kolmogorov inequalities", o, ck_secs);
    }

    run(5, "bound bracketing on the disc", [&] {
        harness::ExperimentSpec spec;
        spec.name = "ball-sharpness";
        spec.seed = seed;
        Report rep = harness::run_experiment(spec);
        Outcome o = from_checks(rep);
        append(o, "C/c " + fmt(rep.summary_value("C_over_c")) + ", spread "
                      + fmt(rep.summary_value("gauss_h_spread")));
        return o;
    });

    run(6, "characteristic estimators", [&] {
        return from_checks(harness::verify_characteristics(seed));
    });

    run(7, "ratio profiles are non-increasing", [&] {
        return from_checks(harness::verify_ratio_profiles(1000, seed));
    });

    run(8, "midpoint distance comparability", [&] {
        Outcome all;
        all.detail.clear();
        for (auto const& d : {geometry::make_unit_ball(2), geometry::make_ellipse(2, 1)})
        {
            auto q = characteristics::qd_estimate(d, 100000, seed);
            Outcome o = from_checks(
                harness::verify_midpoint_comparability(d, q.q_hat, 10000, seed));
            all.pass = all.pass && o.pass;
            append(all, d.to_json()["kind"].get<std::string>() + " q_hat "
                            + fmt(q.q_hat) + " (" + o.detail + ")");
        }
        return all;
    });

    run(9, "stadium regimes", [&] {
        harness::ExperimentSpec spec;
        spec.name = "stadium-regimes";
        spec.seed = seed;
        return from_checks(harness::run_experiment(spec));
    });

    run(10, "half-capsule lower factor", [&] {
        harness::ExperimentSpec spec;
        spec.name = "halfcapsule-s1l";
        spec.seed = seed;
        Report rep = harness::run_experiment(spec);
        Outcome o = from_checks(rep);
        append(o, "min ratio " + fmt(rep.summary_value("ratio_min")));
        return o;
    });

    run(11, "lower-bound forms agree", [&] {
        return from_checks(harness::verify_lower_forms(100000, seed));
    });

    run(12, "reports are reproducible", [&] {
        auto dir = std::filesystem::temp_directory_path() / "dhk_acceptance";
        std::filesystem::create_directories(dir);
        Outcome o;
        o.detail.clear();
        for (char const* preset : {"stadium-regimes", "power-sr"})
        {
            std::vector<std::string> bytes;
            for (char const* tag : {"a", "b"})
            {
                harness::ExperimentSpec spec;
                spec.name = preset;
                spec.seed = 42;
                std::string base = (dir / (std::string(preset) + "-" + tag)).string();
                spec.json_path = base + ".json";
                spec.csv_path = base + ".csv";
                spec.plot_path = base + ".dat";
                harness::run_experiment(spec);
                bytes.push_back(slurp(spec.json_path) + '\x1e'
                                + slurp(spec.csv_path) + '\x1e'
                                + slurp(spec.plot_path));
            }
            bool same = bytes[0] == bytes[1] && bytes[0].size() > 2;
            o.pass = o.pass && same;
            append(o, std::string(preset) + (same ? " identical" : " differs")
                          + " (" + std::to_string(bytes[0].size()) + " bytes)");
        }
        std::filesystem::remove_all(dir);
        return o;
    });

    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
