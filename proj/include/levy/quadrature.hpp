#pragma once

#include <functional>
#include <span>
#include <vector>

namespace levy
{

struct GaussRule
{
    std::vector<double> nodes;    //!< on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule with n points (cached, thread safe)
GaussRule const& gauss_legendre(int n);

struct QuadratureResult
{
    double value{0};
    double error{0};
    int subintervals{0};
};

//---------------------------------------------------------------------------//
/*!
 * Adaptive Gauss-Kronrod (7/15) integration by interval bisection.
 *
 * Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
 * Throws QuadratureError if the budget of subintervals is exhausted first.
 * Interior breakpoints (where the integrand is not smooth) may be supplied so
 * the initial partition respects them.
 */
QuadratureResult integrate_adaptive(std::function<double(double)> const& f,
                                    double a,
                                    double b,
                                    double rel_tol = 1e-13,
                                    double abs_tol = 0,
                                    int max_subintervals = 1 << 14,
                                    std::span<double const> breakpoints = {});

}  // namespace levy
