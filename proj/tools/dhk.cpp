#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhk/bounds/bounds.hpp"
#include "dhk/characteristics/characteristics.hpp"
#include "dhk/geometry/catalog.hpp"
#include "dhk/harness/experiments.hpp"
#include "dhk/harness/report.hpp"
#include "dhk/oracle/monte_carlo.hpp"

using namespace dhk;
using geometry::Domain;
using geometry::Point;

namespace
{
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(std::string const& path)
{
    std::ifstream f(path);
    if (!f)
        throw UsageError("cannot read " + path);
    try
    {
        return nlohmann::json::parse(f);
    }
    catch (nlohmann::json::parse_error const& e)
    {
        throw UsageError(path + ": " + e.what());
    }
}

// A catalog name, inline JSON, or @file holding JSON.
Domain parse_domain(std::string const& arg, int dim)
{
    if (arg.empty())
        throw UsageError("empty --domain");
    if (arg[0] == '@')
        return geometry::make_domain(read_json_file(arg.substr(1)));
    if (arg[0] == '{')
    {
        try
        {
            return geometry::make_domain(nlohmann::json::parse(arg));
        }
        catch (nlohmann::json::parse_error const& e)
        {
            throw UsageError(std::string("--domain: ") + e.what());
        }
    }
    return geometry::make_named_domain(arg, dim);
}

void print(nlohmann::ordered_json const& j)
{
    std::cout << harness::dump_json(j) << '\n';
}

bounds::BoundBreakdown evaluate(Domain const& d, bounds::BoundKind kind,
                                double t, Point const& x, Point const& y,
                                double T)
{
    using bounds::BoundKind;
    switch (kind)
    {
    case BoundKind::upper_main:
        return bounds::upper_bound_main(d, t, x, y, T);
    case BoundKind::upper_midpoint:
        return bounds::upper_bound_midpoint(d, t, x, y, T);
    case BoundKind::wedge_obtuse:
    {
        if (d.kind() != geometry::DomainKind::wedge)
            throw UsageError("wedge-obtuse needs a wedge domain");
        auto const& p = d.params();
        auto h = [&](char const* n, char const* o) {
            return geometry::HalfSpace{
                Point::from(p.at(n).get<std::vector<double>>()),
                p.at(o).get<double>()};
        };
        return bounds::wedge_obtuse_upper(h("normal1", "offset1"),
                                          h("normal2", "offset2"), t, x, y);
    }
    case BoundKind::lower_basic:
        return bounds::lower_bound_basic(d, t, x, y);
    case BoundKind::lower_improved_product:
        return bounds::lower_bound_improved(d, t, x, y).first;
    case BoundKind::lower_improved_sum:
        return bounds::lower_bound_improved(d, t, x, y).second;
    case BoundKind::two_sided_sq:
        return bounds::two_sided_factor(d, t, x, y, bounds::TwoSidedVariant::sq);
    case BoundKind::two_sided_sr:
        return bounds::two_sided_factor(d, t, x, y, bounds::TwoSidedVariant::sr);
    }
    throw UsageError("unknown bound kind");
}

int report_outcome(harness::Report const& rep)
{
    for (auto const& c : rep.checks)
        std::fprintf(stderr, "%s  %s%s%s\n", c.pass ? "PASS" : "FAIL",
                     c.name.c_str(), c.detail.empty() ? "" : ": ",
                     c.detail.c_str());
    return rep.pass() ? 0 : kFailed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dirichlet heat kernel bounds, characteristics and oracles"};
    app.require_subcommand(1);

    std::string domain_arg;
    int dim = 2;
    double t = 0;
    std::string x_arg;
    std::string y_arg;
    std::uint64_t seed = 1;

    auto* eval = app.add_subcommand("eval", "Evaluate a bound with its factors");
    std::string bound_name;
    double T = 0;
    eval->add_option("--domain", domain_arg, "Catalog name, JSON or @file")
        ->required();
    eval->add_option("--dim", dim, "Dimension for catalog names")
        ->check(CLI::Range(1, geometry::kMaxDim));
    eval->add_option("--bound", bound_name, "Bound kind")->required();
    eval->add_option("--t", t, "Time")->required();
    eval->add_option("--x", x_arg, "Point, comma separated")->required();
    eval->add_option("--y", y_arg, "Point, comma separated")->required();
    eval->add_option("--T", T, "Time horizon of the upper bounds (default 2t)");

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the kernel");
    oracle::McOptions mc_opt;
    bool progress = false;
    mc->add_option("--domain", domain_arg, "Catalog name, JSON or @file")
        ->required();
    mc->add_option("--dim", dim, "Dimension for catalog names")
        ->check(CLI::Range(1, geometry::kMaxDim));
    mc->add_option("--t", t, "Time")->required();
    mc->add_option("--x", x_arg, "Point, comma separated")->required();
    mc->add_option("--y", y_arg, "Point, comma separated")->required();
    mc->add_option("--steps", mc_opt.steps, "Steps per path (power of two)");
    mc->add_option("--paths", mc_opt.paths, "Number of paths");
    mc->add_option("--seed", seed, "Master seed");
    mc->add_flag("--progress", progress, "Progress on standard error");

    auto* ch = app.add_subcommand("characteristic",
                                  "Estimate the midpoint characteristics");
    std::int64_t budget = 100000;
    std::string mode = "r";
    double threshold = 0.02;
    ch->add_option("--domain", domain_arg, "Catalog name, JSON or @file")
        ->required();
    ch->add_option("--dim", dim, "Dimension for catalog names")
        ->check(CLI::Range(1, geometry::kMaxDim));
    ch->add_option("--budget", budget, "Sampled boundary pairs");
    ch->add_option("--seed", seed, "Master seed");
    ch->add_option("--kind,--mode", mode,
                   "q: single run; r: with truncation doubling; classify: "
                   "runs at budget and 4x budget")
        ->check(CLI::IsMember({"q", "r", "classify"}));
    ch->add_option("--threshold", threshold, "Classification threshold");

    auto* ex = app.add_subcommand("experiment", "Run a preset or spec file");
    std::string preset;
    std::string spec_file;
    harness::ExperimentSpec spec;
    std::int64_t ex_paths = 0;
    int ex_steps = 0;
    std::int64_t ex_budget = 0;
    auto* preset_opt = ex->add_option("--preset", preset, "Preset name")
                           ->check(CLI::IsMember(harness::preset_names()));
    auto* spec_opt = ex->add_option("--spec", spec_file, "Experiment JSON file");
    preset_opt->excludes(spec_opt);
    auto* seed_opt = ex->add_option("--seed", spec.seed, "Master seed");
    ex->add_option("--paths", ex_paths, "Monte Carlo paths per row");
    ex->add_option("--steps", ex_steps, "Monte Carlo steps per path");
    ex->add_option("--budget", ex_budget, "Characteristic sample pairs");
    ex->add_option("--t", spec.t, "Time grid")->delimiter(',');
    ex->add_option("--json", spec.json_path, "JSON report path");
    ex->add_option("--csv", spec.csv_path, "CSV report path");
    ex->add_option("--plotdata", spec.plot_path, "Plot data path");

    auto* ve = app.add_subcommand("verify", "Run a verification suite");
    std::string suite = "all";
    ve->add_option("--suite", suite, "Suite name")
        ->check(CLI::IsMember(harness::suite_names()));
    ve->add_option("--seed", seed, "Master seed");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        std::fprintf(stderr, "error: %s\n%s", e.what(), app.help().c_str());
        return kUsage;
    }

    try
    {
        if (*eval)
        {
            Domain d = parse_domain(domain_arg, dim);
            auto b = evaluate(d, bounds::bound_kind_from_string(bound_name), t,
                              geometry::parse_point(x_arg),
                              geometry::parse_point(y_arg), T > 0 ? T : 2 * t);
            print(b.to_json());
            return 0;
        }
        if (*mc)
        {
            Domain d = parse_domain(domain_arg, dim);
            mc_opt.seed = seed;
            mc_opt.progress = progress;
            auto est = oracle::mc_kernel(d, t, geometry::parse_point(x_arg),
                                         geometry::parse_point(y_arg), mc_opt);
            print(est.to_json());
            return 0;
        }
        if (*ch)
        {
            Domain d = parse_domain(domain_arg, dim);
            characteristics::CharacteristicReport rep;
            if (mode == "q")
                rep = characteristics::qd_estimate(d, budget, seed);
            else if (mode == "r")
                rep = characteristics::rd_estimate(d, budget, seed);
            else
                rep = characteristics::characterize(d, budget, seed, threshold);
            print(rep.to_json());
            return 0;
        }
        if (*ex)
        {
            if (!spec_file.empty())
            {
                auto file_spec = harness::parse_experiment_spec(
                    read_json_file(spec_file));
                if (*seed_opt)
                    file_spec.seed = spec.seed;
                if (spec.json_path.size())
                    file_spec.json_path = spec.json_path;
                if (spec.csv_path.size())
                    file_spec.csv_path = spec.csv_path;
                if (spec.plot_path.size())
                    file_spec.plot_path = spec.plot_path;
                if (!spec.t.empty())
                    file_spec.t = spec.t;
                spec = file_spec;
            }
            else if (!preset.empty())
            {
                spec.name = preset;
            }
            else
            {
                throw UsageError("experiment needs --preset or --spec");
            }
            if (ex_paths > 0)
                spec.paths = ex_paths;
            if (ex_steps > 0)
                spec.steps = ex_steps;
            if (ex_budget > 0)
                spec.budget = ex_budget;

            auto start = std::chrono::steady_clock::now();
            harness::Report rep = harness::run_experiment(spec);
            double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
            std::fprintf(stderr, "%s: %.1f s (ceiling %.0f s)\n",
                         spec.name.c_str(), elapsed, rep.wall_clock_ceiling_s);
            if (spec.json_path.empty())
                std::cout << harness::emit_report(rep, harness::ReportFormat::json);
            return report_outcome(rep);
        }
        if (*ve)
        {
            harness::Report rep = harness::run_suite(suite, seed);
            print(rep.to_json());
            return report_outcome(rep);
        }
    }
    catch (UsageError const& e)
    {
        std::fprintf(stderr, "error: %s\n%s", e.what(), app.help().c_str());
        return kUsage;
    }
    catch (std::invalid_argument const& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    catch (std::domain_error const& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    catch (std::out_of_range const& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    catch (std::exception const& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFailed;
    }
    return kUsage;
}
