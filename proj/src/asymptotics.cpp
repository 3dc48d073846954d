#include "levy/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "levy/error.hpp"
#include "levy/special.hpp"

namespace levy
{

char const* to_string(ErrorOrder e)
{
    return e == ErrorOrder::one_over_u ? "1/u" : "1/sqrt(u)";
}

AsymptoticEstimate density_asymptote(LevyDensitySpec const& spec, SaddlePoint const& sp)
{
    if (!(sp.beta > 0))
        throw DomainError("asymptote needs u > E T = " + std::to_string(spec.first_moment())
                          + " (beta > 0); got u = " + std::to_string(sp.u));
    AsymptoticEstimate est;
    est.u = sp.u;
    est.beta = sp.beta;
    est.sigma = std::sqrt(sp.sigma2);
    est.log_f_hat = sp.log_prefactor - 0.5 * std::log(2 * std::numbers::pi) - 0.5 * sp.log_sigma2;
    est.f_hat = std::exp(est.log_f_hat);
    est.log_tail_hat = est.log_f_hat - std::log(sp.beta);
    est.tail_hat = std::exp(est.log_tail_hat);
    est.claimed_rel_error_order = spec.classification().theorem == Theorem::thm1
                                      ? ErrorOrder::one_over_u
                                      : ErrorOrder::one_over_sqrt_u;
    return est;
}

AsymptoticEstimate density_asymptote(LevyDensitySpec const& spec, double u)
{
    if (spec.classification().theorem == Theorem::rejected)
        throw PreconditionError("spec '" + spec.label() + "' is outside both theorems: "
                                + spec.classification().diagnostic);
    if (!(u > spec.first_moment()))
        throw DomainError("asymptote needs u > E T = " + std::to_string(spec.first_moment())
                          + "; got u = " + std::to_string(u));
    return density_asymptote(spec, solve_saddle(spec, u));
}

AsymptoticEstimate tail_asymptote(LevyDensitySpec const& spec, double u)
{
    return density_asymptote(spec, u);
}

double log_dickman_asymptote(double u)
{
    if (!(u > 1))
        throw DomainError("dickman_asymptote needs u > 1, got " + std::to_string(u));
    static auto const dickman = builtin_dickman();
    auto sp = solve_saddle(dickman, u);
    return 0.5 * (std::log(sp.beta_prime) - std::log(2 * std::numbers::pi)) + kEulerGamma
           + sp.log_prefactor;
}

double dickman_asymptote(double u)
{
    return std::exp(log_dickman_asymptote(u));
}

double tilted_gaussian(double y)
{
    return std::exp(-0.5 * y * y) / std::sqrt(2 * std::numbers::pi);
}

}  // namespace levy
