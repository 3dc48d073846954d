#pragma once

#include "levy/density_model.hpp"
#include "levy/saddle.hpp"

namespace levy
{

enum class ErrorOrder
{
    one_over_u,
    one_over_sqrt_u
};

char const* to_string(ErrorOrder e);

struct AsymptoticEstimate
{
    double u{0};
    double f_hat{0};
    double log_f_hat{0};
    double tail_hat{0};
    double log_tail_hat{0};
    double beta{0};
    double sigma{0};
    ErrorOrder claimed_rel_error_order{ErrorOrder::one_over_u};
};

/*!
 * Saddle-point density estimate
 *
 *   f(u) ~ e^{C(beta) - u beta} / (sqrt(2 pi) sigma_beta),   C'(beta) = u,
 *
 * and the tail estimate P(T >= u) ~ f(u)/beta. Requires u > E T so beta > 0.
 */
AsymptoticEstimate density_asymptote(LevyDensitySpec const& spec, double u);
AsymptoticEstimate density_asymptote(LevyDensitySpec const& spec, SaddlePoint const& sp);

// Same estimate; provided for symmetry with the tail oracle
AsymptoticEstimate tail_asymptote(LevyDensitySpec const& spec, double u);

// rho(u) ~ sqrt(beta'(u)/2 pi) e^{gamma - u beta + C(beta)} for the 1/x intensity
double dickman_asymptote(double u);
double log_dickman_asymptote(double u);

// Standard normal density
double tilted_gaussian(double y);

}  // namespace levy
