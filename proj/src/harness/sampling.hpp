#pragma once

#include <cmath>
#include <vector>

#include "dhk/geometry/domain.hpp"
#include "dhk/random.hpp"

namespace dhk::harness
{
inline geometry::Point random_direction(random::Stream& rng, int n)
{
    geometry::Point v(n);
    double len = 0;
    while (len < 1e-12)
    {
        for (int i = 0; i < n; ++i)
            v[i] = rng.normal();
        len = geometry::norm(v);
    }
    return v * (1 / len);
}

//! Uniform on the domain restricted to its sampling box.
inline geometry::Point sample_interior(geometry::Domain const& d,
                                       random::Stream& rng,
                                       double truncation = 4)
{
    geometry::AxisBox box = d.sampling_box(truncation);
    for (;;)
    {
        geometry::Point x(d.dim());
        for (int i = 0; i < d.dim(); ++i)
            x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * rng.uniform();
        if (d.contains(x))
            return x;
    }
}

inline geometry::Point sample_boundary(geometry::Domain const& d,
                                       random::Stream& rng,
                                       double truncation = 4)
{
    std::vector<double> u;
    for (auto const& ax : d.boundary_chart(truncation))
        u.push_back(ax.lo + (ax.hi - ax.lo) * rng.uniform());
    return d.boundary_point(u);
}

//! Half the draws are uniform interior points; the rest sit at a
//! log-uniform depth in [1e-4, 1] times the domain scale below a random
//! boundary point where the tangent is defined.
inline geometry::Point sample_mixed(geometry::Domain const& d,
                                    random::Stream& rng,
                                    double truncation = 4)
{
    if (rng.uniform() < 0.5)
        return sample_interior(d, rng, truncation);
    for (;;)
    {
        geometry::Point w = sample_boundary(d, rng, truncation);
        geometry::HalfSpace h;
        try
        {
            h = d.supporting_halfspace(w);
        }
        catch (std::domain_error const&)
        {
            continue;
        }
        double depth = d.scale() * std::pow(10.0, -4 + 4 * rng.uniform());
        geometry::Point x = w + h.normal() * depth;
        if (d.contains(x))
            return x;
    }
}

}  // namespace dhk::harness
