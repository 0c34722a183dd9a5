#include "dhk/oracle/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dhk/kernels/kernels.hpp"
#include "dhk/parallel.hpp"
#include "dhk/random.hpp"

namespace dhk::oracle
{
namespace
{
struct ChunkSum
{
    double sum = 0;
    double sum_sq = 0;
};

void validate(Domain const& d, double t, Point const& x, Point const& y,
              McOptions const& opt)
{
    if (!(t > 0) || !std::isfinite(t))
        throw std::domain_error("time must be positive and finite");
    if (opt.steps < 2 || (opt.steps & (opt.steps - 1)) != 0)
        throw std::invalid_argument("steps must be a power of two >= 2");
    if (opt.paths < 100)
        throw std::invalid_argument("at least 100 paths are required");
    for (Point const* p : {&x, &y})
    {
        if (!d.in_closure(*p))
            throw std::domain_error("point " + geometry::format_point(*p)
                                    + " lies outside the domain");
    }
}

// Weight of one bridge path; zero once the path is killed.
double simulate_path(geometry::Shape const& shape, double t, Point const& x,
                     Point const& y, int steps, random::Stream& rng)
{
    int const n = x.dim();
    double const dt = t / steps;
    Point z = x;
    geometry::Projection pz = shape.project(z);
    double weight = 1;
    for (int i = 0; i < steps; ++i)
    {
        Point next = y;
        if (i + 1 < steps)
        {
            double remaining = t - i * dt;
            double drift = dt / remaining;
            double sd = std::sqrt(2 * dt * (remaining - dt) / remaining);
            for (int k = 0; k < n; ++k)
                next[k] = z[k] + (y[k] - z[k]) * drift + sd * rng.normal();
            if (!shape.contains(next))
                return 0.0;
        }
        geometry::Projection pn = shape.project(next);
        geometry::HalfSpace const& h
            = pn.distance < pz.distance ? pn.tangent : pz.tangent;
        double a = std::max(0.0, h.distance(z));
        double b = std::max(0.0, h.distance(next));
        double u = a * b / dt;
        if (u < 40)
            weight *= -std::expm1(-u);
        if (weight == 0)
            return 0.0;
        z = next;
        pz = pn;
    }
    return weight;
}

}  // namespace

std::string_view to_string(BiasNote note)
{
    return note == BiasNote::upper_biased ? "upper-biased" : "unbiased-limit";
}

nlohmann::ordered_json McEstimate::to_json() const
{
    nlohmann::ordered_json j;
    j["mean"] = mean;
    j["stderr"] = std_error;
    j["paths"] = paths;
    j["steps"] = steps;
    j["seed"] = seed;
    j["bias_note"] = std::string(to_string(bias));
    return j;
}

int resolve_threads(int requested)
{
    return parallel::resolve_threads(requested);
}

McEstimate bridge_survival(Domain const& d, double t, Point const& x,
                           Point const& y, McOptions const& opt)
{
    validate(d, t, x, y, opt);
    McEstimate est;
    est.paths = opt.paths;
    est.steps = opt.steps;
    est.seed = opt.seed;
    est.bias = d.kind() == geometry::DomainKind::halfspace
                   ? BiasNote::unbiased_limit
                   : BiasNote::upper_biased;
    if (!d.contains(x) || !d.contains(y))
        return est;

    std::int64_t const chunks = (opt.paths + kChunkPaths - 1) / kChunkPaths;
    std::vector<ChunkSum> sums(static_cast<std::size_t>(chunks));
    std::atomic<std::int64_t> next_chunk{0};
    std::atomic<std::int64_t> done{0};
    std::mutex progress_mutex;
    geometry::Shape const& shape = d.shape();

    auto worker = [&] {
        for (;;)
        {
            std::int64_t c = next_chunk.fetch_add(1);
            if (c >= chunks)
                return;
            std::int64_t begin = c * kChunkPaths;
            std::int64_t end = std::min(opt.paths, begin + kChunkPaths);
            ChunkSum s;
            for (std::int64_t p = begin; p < end; ++p)
            {
                random::Stream rng(opt.seed, static_cast<std::uint64_t>(p));
                double w = simulate_path(shape, t, x, y, opt.steps, rng);
                s.sum += w;
                s.sum_sq += w * w;
            }
            sums[static_cast<std::size_t>(c)] = s;
            std::int64_t finished = done.fetch_add(1) + 1;
            if (opt.progress && (finished % 16 == 0 || finished == chunks))
            {
                std::lock_guard lock(progress_mutex);
                std::fprintf(stderr, "mc: %lld/%lld paths\n",
                             static_cast<long long>(std::min(
                                 opt.paths, finished * kChunkPaths)),
                             static_cast<long long>(opt.paths));
            }
        }
    };

    int threads = static_cast<int>(
        std::min<std::int64_t>(resolve_threads(opt.threads), chunks));
    if (threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    double sum = 0;
    double sum_sq = 0;
    for (auto const& s : sums)
    {
        sum += s.sum;
        sum_sq += s.sum_sq;
    }
    auto m = static_cast<double>(opt.paths);
    est.mean = sum / m;
    double var = std::max(0.0, (sum_sq - m * est.mean * est.mean) / (m - 1));
    est.std_error = std::sqrt(var / m);
    return est;
}

McEstimate mc_kernel(Domain const& d, double t, Point const& x,
                     Point const& y, McOptions const& opt)
{
    McEstimate est = bridge_survival(d, t, x, y, opt);
    double g = kernels::gauss_kernel(t, x, y);
    est.mean *= g;
    est.std_error *= g;
    return est;
}

bounds::KernelSource mc_kernel_source(Domain d, McOptions opt)
{
    return [d = std::move(d), opt](double t, Point const& x, Point const& y) {
        return mc_kernel(d, t, x, y, opt).mean;
    };
}

std::optional<bounds::KernelSource> exact_kernel_source(Domain const& d)
{
    if (d.kind() == geometry::DomainKind::box)
    {
        Point lo = Point::from(d.params()["lo"].get<std::vector<double>>());
        Point hi = Point::from(d.params()["hi"].get<std::vector<double>>());
        return [lo, hi](double t, Point const& x, Point const& y) {
            return kernels::box_kernel(t, x, y, lo, hi);
        };
    }
    if (d.kind() == geometry::DomainKind::halfspace)
    {
        geometry::HalfSpace h{
            Point::from(d.params()["normal"].get<std::vector<double>>()),
            d.params()["offset"].get<double>()};
        return [h](double t, Point const& x, Point const& y) {
            return kernels::halfspace_kernel(t, x, y, h);
        };
    }
    return std::nullopt;
}

}  // namespace dhk::oracle
