#include "dhk/characteristics/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dhk/characteristics/nelder_mead.hpp"
#include "dhk/parallel.hpp"
#include "dhk/random.hpp"

namespace dhk::characteristics
{
namespace
{
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStableChange = 0.05;
constexpr int kMaxStarts = 200;
constexpr int kMaxDoublings = 5;

struct PairValue
{
    bool ok = false;
    double q = 0;
    double r = 0;
};

struct Evaluator
{
    Domain const& d;
    double r_level;
    double min_separation;
    double face_tolerance;

    PairValue operator()(Point const& w, Point const& z) const
    {
        PairValue v;
        if (geometry::distance(w, z) < min_separation)
            return v;
        geometry::HalfSpace h;
        try
        {
            h = d.supporting_halfspace(w);
        }
        catch (std::domain_error const&)
        {
            return v;
        }
        double hz = h.distance(z);
        if (0.5 * hz < face_tolerance)
            return v;

        double dm = d.distance(geometry::midpoint(w, z));
        v.ok = true;
        v.q = std::min(1.0, dm / (0.5 * hz));
        v.r = v.q;
        if (dm > r_level)
        {
            // delta_D is concave along the segment and vanishes at w, so the
            // part deeper than r_level starts at a single crossing in (0, 1/2).
            double lo = 0;
            double hi = 0.5;
            for (int it = 0; it < 45; ++it)
            {
                double m = 0.5 * (lo + hi);
                if (d.distance(geometry::lerp(w, z, m)) > r_level)
                    hi = m;
                else
                    lo = m;
            }
            double dh = d.distance(geometry::lerp(w, z, hi));
            v.r = std::min(1.0, std::max(v.q, dh / (hi * hz)));
        }
        return v;
    }
};

struct Sample
{
    std::vector<double> u;  //!< chart coordinates of w followed by z
    double q = kInf;
    double r = kInf;
};

struct Best
{
    double value = kInf;
    std::vector<double> u;

    void offer(double v, std::vector<double> const& x)
    {
        if (v < value)
        {
            value = v;
            u = x;
        }
    }
};

class Chart
{
  public:
    Chart(Domain const& d, double truncation)
        : d_(d), axes_(d.boundary_chart(truncation)), unbounded_(!d.bounded())
    {
    }

    std::size_t dim() const { return axes_.size(); }

    double span() const
    {
        double s = 0;
        for (auto const& a : axes_)
            s = std::max(s, a.hi - a.lo);
        return s;
    }

    bool inside(std::span<double const> u) const
    {
        if (!unbounded_)
            return true;
        for (std::size_t i = 0; i < u.size(); ++i)
        {
            auto const& ax = axes_[i % axes_.size()];
            if (u[i] < ax.lo || u[i] > ax.hi)
                return false;
        }
        return true;
    }

    Point point(std::span<double const> u) const { return d_.boundary_point(u); }

    std::pair<Point, Point> pair(std::vector<double> const& u) const
    {
        std::span<double const> s(u);
        return {point(s.first(dim())), point(s.subspan(dim(), dim()))};
    }

    std::vector<double> draw(random::Stream& rng) const
    {
        std::vector<double> u(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            u[i] = axes_[i].lo + (axes_[i].hi - axes_[i].lo) * rng.uniform();
        return u;
    }

  private:
    Domain const& d_;
    std::vector<geometry::ChartAxis> axes_;
    bool unbounded_;
};

// Even indices pair two independent chart points; odd indices pair a point
// with a neighbour at a log-uniform chart offset in [1e-4, 1] times the chart
// span, which reaches the short-chord regime where infima tend to live.
std::vector<double> draw_pair(Chart const& chart, random::Stream& rng,
                              bool local)
{
    std::vector<double> u = chart.draw(rng);
    std::vector<double> v;
    if (!local)
    {
        v = chart.draw(rng);
    }
    else
    {
        std::vector<double> dir(chart.dim());
        double len = 0;
        for (auto& c : dir)
        {
            c = rng.normal();
            len += c * c;
        }
        len = std::sqrt(len);
        double mag = chart.span() * std::pow(10.0, -4 + 4 * rng.uniform());
        v = u;
        for (std::size_t i = 0; i < dir.size(); ++i)
            v[i] += dir[i] / len * mag;
    }
    u.insert(u.end(), v.begin(), v.end());
    return u;
}

double default_truncation(Domain const& d)
{
    return 10 * std::max(1.0, d.scale());
}

nlohmann::json point_json(Point const& p)
{
    return p.to_vector();
}

bool stable(double before, double after)
{
    if (before == 0)
        return after == 0;
    return std::abs(after - before) < kStableChange * before;
}

CharacteristicReport one_dimensional(Domain const& d, Evaluator const& eval)
{
    CharacteristicReport rep;
    double left = std::numbers::pi;
    double right = 0;
    Point a = d.boundary_point(std::span<double const>(&left, 1));
    Point b = d.boundary_point(std::span<double const>(&right, 1));
    PairValue ab = eval(a, b);
    PairValue ba = eval(b, a);
    rep.q_hat = std::min(ab.q, ba.q);
    rep.r_hat = std::min(ab.r, ba.r);
    rep.argmin_pair = ab.q <= ba.q ? std::pair{a, b} : std::pair{b, a};
    rep.r_argmin_pair = ab.r <= ba.r ? std::pair{a, b} : std::pair{b, a};
    rep.samples = 2;
    rep.refinement_trace.push_back({2, rep.q_hat, rep.r_hat});
    return rep;
}

}  // namespace

std::string_view to_string(Classification c)
{
    switch (c)
    {
    case Classification::s_q:
        return "S_Q";
    case Classification::s_r:
        return "S_R";
    case Classification::neither:
        return "neither";
    case Classification::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

nlohmann::ordered_json CharacteristicReport::to_json() const
{
    nlohmann::ordered_json j;
    j["domain"] = domain;
    j["strictly_convex"] = strictly_convex;
    j["budget"] = budget;
    j["seed"] = seed;
    j["truncation"] = truncation;
    j["r_level"] = r_level;
    j["q_hat"] = q_hat;
    j["r_hat"] = r_hat;
    j["argmin_pair"] = {point_json(argmin_pair.first),
                        point_json(argmin_pair.second)};
    j["r_argmin_pair"] = {point_json(r_argmin_pair.first),
                          point_json(r_argmin_pair.second)};
    j["samples"] = samples;
    j["skipped"] = skipped;
    auto trace = nlohmann::ordered_json::array();
    for (auto const& e : refinement_trace)
        trace.push_back({e.samples, e.q_inf, e.r_inf});
    j["refinement_trace"] = trace;
    j["classification"] = std::string(to_string(classification));
    j["threshold"] = threshold;
    return j;
}

std::vector<double> ratio_profile(Domain const& d, Point const& w,
                                  Point const& z, int grid)
{
    if (grid < 2)
        throw std::invalid_argument("ratio_profile: grid must be at least 2");
    if (w == z)
        throw std::invalid_argument("ratio_profile: w and z coincide");
    for (Point const* p : {&w, &z})
    {
        if (p->dim() != d.dim())
            throw std::invalid_argument("ratio_profile: dimension mismatch");
        if (!d.in_closure(*p) || d.distance(*p) > 1e-9)
            throw std::invalid_argument(
                "ratio_profile: point is not on the boundary");
    }
    geometry::HalfSpace h = d.supporting_halfspace(w);
    double hz = h.distance(z);
    if (hz <= 1e-12 * d.scale())
        throw std::domain_error(
            "ratio_profile: the segment lies in the tangent hyperplane at w");

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(grid));
    for (int k = 1; k <= grid; ++k)
    {
        double alpha = static_cast<double>(k) / grid;
        Point m = geometry::lerp(w, z, alpha);
        out.push_back(d.distance(m) / h.distance(m));
    }
    return out;
}

CharacteristicReport estimate(Domain const& d, EstimateOptions const& opt)
{
    if (opt.budget < 1000)
        throw std::invalid_argument("estimate: budget must be at least 1000");
    if (!(opt.r_level > 0))
        throw std::invalid_argument("estimate: r_level must be positive");

    double truncation = opt.truncation > 0 ? opt.truncation
                                           : default_truncation(d);
    Evaluator eval{d, opt.r_level, 1e-5 * d.scale(), 1e-12 * d.scale()};

    CharacteristicReport rep;
    if (d.dim() == 1)
    {
        rep = one_dimensional(d, eval);
    }
    else
    {
        Chart chart(d, truncation);
        std::int64_t const chunks = (opt.budget + kChunkPairs - 1) / kChunkPairs;
        std::vector<std::vector<Sample>> drawn(static_cast<std::size_t>(chunks));

        parallel::for_each_index(chunks, opt.threads, [&](std::int64_t c) {
            random::Stream rng(opt.seed, static_cast<std::uint64_t>(c));
            std::int64_t begin = c * kChunkPairs;
            std::int64_t end = std::min(opt.budget, begin + kChunkPairs);
            auto& out = drawn[static_cast<std::size_t>(c)];
            out.reserve(static_cast<std::size_t>(end - begin));
            for (std::int64_t i = begin; i < end; ++i)
            {
                Sample s;
                s.u = draw_pair(chart, rng, i % 2 == 1);
                auto [w, z] = chart.pair(s.u);
                PairValue v = eval(w, z);
                if (v.ok)
                {
                    s.q = v.q;
                    s.r = v.r;
                }
                out.push_back(std::move(s));
            }
        });

        Best best_q;
        Best best_r;
        std::vector<Sample const*> valid;
        std::int64_t seen = 0;
        for (auto const& chunk : drawn)
        {
            for (auto const& s : chunk)
            {
                if (std::isinf(s.q))
                {
                    ++rep.skipped;
                    continue;
                }
                valid.push_back(&s);
                best_q.offer(s.q, s.u);
                best_r.offer(s.r, s.u);
            }
            seen += static_cast<std::int64_t>(chunk.size());
            rep.refinement_trace.push_back({seen, best_q.value, best_r.value});
        }
        rep.samples = seen;

        // Local simplex refinement from the best 1% of the samples, for q and
        // for r separately; every evaluation feeds both infima.
        auto starts = static_cast<std::size_t>(std::min<std::int64_t>(
            kMaxStarts, (static_cast<std::int64_t>(valid.size()) + 99) / 100));
        std::vector<std::pair<Sample const*, bool>> jobs;
        for (bool use_r : {false, true})
        {
            auto by = [use_r](Sample const* a, Sample const* b) {
                return use_r ? a->r < b->r : a->q < b->q;
            };
            std::vector<Sample const*> sorted = valid;
            std::size_t k = std::min(starts, sorted.size());
            std::partial_sort(sorted.begin(), sorted.begin() + k, sorted.end(),
                              by);
            for (std::size_t i = 0; i < k; ++i)
                jobs.push_back({sorted[i], use_r});
        }

        struct JobResult
        {
            Best q;
            Best r;
            std::int64_t evaluations = 0;
        };
        std::vector<JobResult> results(jobs.size());
        parallel::for_each_index(
            static_cast<std::int64_t>(jobs.size()), opt.threads,
            [&](std::int64_t j) {
                auto const& [start, use_r] = jobs[static_cast<std::size_t>(j)];
                JobResult& res = results[static_cast<std::size_t>(j)];
                auto objective = [&](std::vector<double> const& u) {
                    if (!chart.inside(u))
                        return kInf;
                    auto [w, z] = chart.pair(u);
                    PairValue v = eval(w, z);
                    ++res.evaluations;
                    if (!v.ok)
                        return kInf;
                    res.q.offer(v.q, u);
                    res.r.offer(v.r, u);
                    return use_r ? v.r : v.q;
                };
                std::size_t m = chart.dim();
                double sep = 0;
                for (std::size_t i = 0; i < m; ++i)
                    sep = std::max(sep, std::abs(start->u[i] - start->u[m + i]));
                double h = std::max(0.25 * sep, 1e-6 * chart.span());
                std::vector<double> step(2 * m, h);
                nelder_mead(objective, start->u, step, {1e-10, 300});
            });

        std::int64_t evaluations = 0;
        for (auto const& res : results)
        {
            evaluations += res.evaluations;
            best_q.offer(res.q.value, res.q.u);
            best_r.offer(res.r.value, res.r.u);
        }
        rep.samples += evaluations;
        if (!jobs.empty())
            rep.refinement_trace.push_back(
                {rep.samples, best_q.value, best_r.value});

        if (valid.empty())
            throw std::runtime_error(
                "estimate: no boundary pair had a well-defined ratio");
        rep.q_hat = best_q.value;
        rep.r_hat = best_r.value;
        rep.argmin_pair = chart.pair(best_q.u);
        rep.r_argmin_pair = chart.pair(best_r.u);
    }

    rep.domain = d.to_json();
    rep.strictly_convex = d.strictly_convex();
    rep.budget = opt.budget;
    rep.seed = opt.seed;
    rep.truncation = d.bounded() ? 0 : truncation;
    rep.r_level = opt.r_level;
    return rep;
}

CharacteristicReport qd_estimate(Domain const& d, std::int64_t budget,
                                 std::uint64_t seed)
{
    EstimateOptions opt;
    opt.budget = budget;
    opt.seed = seed;
    return estimate(d, opt);
}

CharacteristicReport rd_estimate(Domain const& d, std::int64_t budget,
                                 std::uint64_t seed)
{
    EstimateOptions opt;
    opt.budget = budget;
    opt.seed = seed;
    CharacteristicReport rep = estimate(d, opt);
    if (d.bounded())
        return rep;
    opt.truncation = default_truncation(d);
    for (int k = 0; k < kMaxDoublings; ++k)
    {
        opt.truncation *= 2;
        CharacteristicReport wider = estimate(d, opt);
        bool done = stable(rep.r_hat, wider.r_hat);
        rep = std::move(wider);
        if (done)
            break;
    }
    return rep;
}

Classification classify(Domain const& d, double threshold,
                        std::vector<CharacteristicReport> const& reports)
{
    if (reports.size() < 2)
        throw std::invalid_argument("classify: need reports at two budgets");
    nlohmann::json const spec = d.to_json();
    for (auto const& r : reports)
        if (r.domain != spec)
            throw std::invalid_argument("classify: reports of another domain");

    auto [lo, hi] = std::minmax_element(
        reports.begin(), reports.end(),
        [](auto const& a, auto const& b) { return a.budget < b.budget; });
    if (lo->budget == hi->budget)
        throw std::invalid_argument("classify: need reports at two budgets");

    if (!d.strictly_convex())
        return Classification::neither;
    bool q_ok = stable(lo->q_hat, hi->q_hat) && hi->q_hat > threshold;
    if (q_ok && d.bounded())
        return Classification::s_q;
    bool r_stable = stable(lo->r_hat, hi->r_hat);
    if (r_stable)
        return hi->r_hat > threshold ? Classification::s_r
                                     : Classification::neither;
    if (hi->r_hat < lo->r_hat)
        return Classification::neither;
    return Classification::inconclusive;
}

CharacteristicReport characterize(Domain const& d, std::int64_t budget,
                                  std::uint64_t seed, double threshold)
{
    CharacteristicReport small = rd_estimate(d, budget, seed);
    CharacteristicReport large = rd_estimate(d, 4 * budget, seed);
    large.threshold = threshold;
    large.classification = classify(d, threshold, {small, large});
    return large;
}

}  // namespace dhk::characteristics
