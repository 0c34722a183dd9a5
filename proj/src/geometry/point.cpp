#include "dhk/geometry/point.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace dhk::geometry
{
namespace
{
Point unit_vector(int n, int axis)
{
    Point e(n);
    e[axis] = 1;
    return e;
}
}  // namespace

Point parse_point(std::string const& text)
{
    std::vector<double> coords;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
    {
        std::size_t used = 0;
        double v = 0;
        try
        {
            v = std::stod(item, &used);
        }
        catch (std::exception const&)
        {
            throw std::invalid_argument("malformed point '" + text + "'");
        }
        while (used < item.size() && std::isspace(item[used]))
            ++used;
        if (used != item.size())
            throw std::invalid_argument("malformed point '" + text + "'");
        coords.push_back(v);
    }
    if (coords.empty())
        throw std::invalid_argument("empty point");
    return Point::from(coords);
}

std::vector<Point> orthonormal_complement(std::vector<Point> const& vs, int n)
{
    std::vector<Point> basis;
    for (Point const& v : vs)
    {
        Point w = v;
        for (Point const& b : basis)
            w -= b * dot(w, b);
        double len = norm(w);
        if (len > 1e-12)
            basis.push_back(w * (1 / len));
    }
    std::size_t given = basis.size();
    for (int i = 0; i < n && static_cast<int>(basis.size()) < n; ++i)
    {
        Point w = unit_vector(n, i);
        for (Point const& b : basis)
            w -= b * dot(w, b);
        double len = norm(w);
        if (len > 1e-8)
            basis.push_back(w * (1 / len));
    }
    return {basis.begin() + static_cast<std::ptrdiff_t>(given), basis.end()};
}

std::string format_point(Point const& p, char sep)
{
    std::string out;
    char buf[32];
    for (int i = 0; i < p.dim(); ++i)
    {
        if (i > 0)
            out += sep;
        std::snprintf(buf, sizeof(buf), "%.12e", p[i]);
        out += buf;
    }
    return out;
}

}  // namespace dhk::geometry
