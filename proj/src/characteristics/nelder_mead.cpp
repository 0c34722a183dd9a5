#include "dhk/characteristics/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dhk::characteristics
{
NelderMeadResult nelder_mead(
    std::function<double(std::vector<double> const&)> const& f,
    std::vector<double> x0, std::vector<double> const& step,
    NelderMeadOptions const& opt)
{
    std::size_t const n = x0.size();
    if (step.size() != n)
        throw std::invalid_argument("nelder_mead: step size mismatch");

    NelderMeadResult res;
    if (n == 0)
    {
        res.value = f(x0);
        res.x = std::move(x0);
        res.evaluations = 1;
        return res;
    }

    auto eval = [&](std::vector<double> const& x) {
        ++res.evaluations;
        double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i)
        simplex[i + 1][i] += step[i];
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        fv[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto combine = [&](std::vector<double> const& c,
                       std::vector<double> const& w, double coef) {
        std::vector<double> r(n);
        for (std::size_t j = 0; j < n; ++j)
            r[j] = c[j] + coef * (w[j] - c[j]);
        return r;
    };

    while (res.evaluations < opt.max_evaluations)
    {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return fv[a] < fv[b];
                         });
        auto const& best = simplex[order[0]];
        double spread = 0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                spread = std::max(spread,
                                  std::abs(simplex[order[i]][j] - best[j]));
        if (spread <= opt.xtol)
            break;

        std::size_t worst = order[n];
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                centroid[j] += simplex[order[i]][j] / n;

        auto xr = combine(centroid, simplex[worst], -1.0);
        double fr = eval(xr);
        if (fr < fv[order[0]])
        {
            auto xe = combine(centroid, simplex[worst], -2.0);
            double fe = eval(xe);
            if (fe < fr)
            {
                simplex[worst] = std::move(xe);
                fv[worst] = fe;
            }
            else
            {
                simplex[worst] = std::move(xr);
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[order[n - 1]])
        {
            simplex[worst] = std::move(xr);
            fv[worst] = fr;
            continue;
        }
        bool outside = fr < fv[worst];
        auto xc = outside ? combine(centroid, xr, 0.5)
                          : combine(centroid, simplex[worst], 0.5);
        double fc = eval(xc);
        if (fc < std::min(fr, fv[worst]))
        {
            simplex[worst] = std::move(xc);
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= n; ++i)
        {
            auto& v = simplex[order[i]];
            v = combine(best, v, 0.5);
            fv[order[i]] = eval(v);
        }
    }

    auto it = std::min_element(fv.begin(), fv.end());
    res.value = *it;
    res.x = simplex[static_cast<std::size_t>(it - fv.begin())];
    return res;
}

}  // namespace dhk::characteristics
