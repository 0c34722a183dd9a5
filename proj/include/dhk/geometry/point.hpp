#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dhk::geometry
{
// Domains are small-dimensional; points live inline so the Monte Carlo inner
// loop never allocates.
inline constexpr int kMaxDim = 8;

class Point
{
  public:
    Point() = default;

    explicit Point(int dim) : n_{dim}
    {
        if (dim < 1 || dim > kMaxDim)
        {
            throw std::invalid_argument("point dimension must be in [1, "
                                        + std::to_string(kMaxDim) + "]");
        }
    }

    Point(std::initializer_list<double> coords)
        : Point(static_cast<int>(coords.size()))
    {
        int i = 0;
        for (double c : coords)
        {
            c_[i++] = c;
        }
        check_finite();
    }

    static Point from(std::span<double const> coords)
    {
        Point p(static_cast<int>(coords.size()));
        for (int i = 0; i < p.n_; ++i)
        {
            p.c_[i] = coords[i];
        }
        p.check_finite();
        return p;
    }

    int dim() const noexcept { return n_; }

    double operator[](int i) const noexcept { return c_[i]; }
    double& operator[](int i) noexcept { return c_[i]; }

    std::span<double const> coords() const noexcept
    {
        return {c_.data(), static_cast<std::size_t>(n_)};
    }
    std::vector<double> to_vector() const
    {
        return {c_.begin(), c_.begin() + n_};
    }

    Point& operator+=(Point const& o)
    {
        require_same_dim(o);
        for (int i = 0; i < n_; ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    Point& operator-=(Point const& o)
    {
        require_same_dim(o);
        for (int i = 0; i < n_; ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    Point& operator*=(double s) noexcept
    {
        for (int i = 0; i < n_; ++i)
            c_[i] *= s;
        return *this;
    }

    void require_same_dim(Point const& o) const
    {
        if (o.n_ != n_)
        {
            throw std::invalid_argument("dimension mismatch: "
                                        + std::to_string(n_) + " vs "
                                        + std::to_string(o.n_));
        }
    }

    bool operator==(Point const& o) const noexcept
    {
        if (n_ != o.n_)
            return false;
        for (int i = 0; i < n_; ++i)
            if (c_[i] != o.c_[i])
                return false;
        return true;
    }

  private:
    void check_finite() const
    {
        for (int i = 0; i < n_; ++i)
        {
            if (!std::isfinite(c_[i]))
                throw std::invalid_argument("point coordinates must be finite");
        }
    }

    std::array<double, kMaxDim> c_{};
    int n_ = 0;
};

inline Point operator+(Point a, Point const& b)
{
    a += b;
    return a;
}
inline Point operator-(Point a, Point const& b)
{
    a -= b;
    return a;
}
inline Point operator*(Point a, double s) noexcept
{
    a *= s;
    return a;
}
inline Point operator*(double s, Point a) noexcept
{
    a *= s;
    return a;
}

inline double dot(Point const& a, Point const& b)
{
    a.require_same_dim(b);
    double s = 0;
    for (int i = 0; i < a.dim(); ++i)
        s += a[i] * b[i];
    return s;
}

inline double norm(Point const& a) noexcept
{
    double s = 0;
    for (int i = 0; i < a.dim(); ++i)
        s += a[i] * a[i];
    return std::sqrt(s);
}

inline double squared_distance(Point const& a, Point const& b)
{
    a.require_same_dim(b);
    double s = 0;
    for (int i = 0; i < a.dim(); ++i)
    {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double distance(Point const& a, Point const& b)
{
    return std::sqrt(squared_distance(a, b));
}

//! (1 - alpha) a + alpha b
inline Point lerp(Point const& a, Point const& b, double alpha)
{
    a.require_same_dim(b);
    Point r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        r[i] = (1 - alpha) * a[i] + alpha * b[i];
    return r;
}

inline Point midpoint(Point const& a, Point const& b)
{
    return lerp(a, b, 0.5);
}

//! Lexicographic order, used to break ties between equally near boundary
//! points deterministically.
inline bool lex_less(Point const& a, Point const& b)
{
    a.require_same_dim(b);
    for (int i = 0; i < a.dim(); ++i)
    {
        if (a[i] < b[i])
            return true;
        if (a[i] > b[i])
            return false;
    }
    return false;
}

//! Orthonormal basis of the complement of span(vs) in R^n.
std::vector<Point> orthonormal_complement(std::vector<Point> const& vs, int n);

Point parse_point(std::string const& text);
std::string format_point(Point const& p, char sep = ',');

}  // namespace dhk::geometry
