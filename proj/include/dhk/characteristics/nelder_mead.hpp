#pragma once

#include <functional>
#include <vector>

namespace dhk::characteristics
{
struct NelderMeadOptions
{
    double xtol = 1e-10;  //!< stop when every vertex is this close to the best
    int max_evaluations = 400;
};

struct NelderMeadResult
{
    std::vector<double> x;
    double value = 0;
    int evaluations = 0;
};

//! Derivative-free minimization from the simplex x0 + step e_i. The
//! objective may return +inf to reject a point.
NelderMeadResult nelder_mead(
    std::function<double(std::vector<double> const&)> const& f,
    std::vector<double> x0, std::vector<double> const& step,
    NelderMeadOptions const& opt = {});

}  // namespace dhk::characteristics
