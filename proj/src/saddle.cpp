#include "levy/saddle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "levy/cumulant.hpp"
#include "levy/error.hpp"

namespace levy
{
namespace
{

struct Eval
{
    double phi;    //!< log C'(beta) - log u
    double dphi;   //!< C''/C'
};

Eval evaluate(LevyDensitySpec const& spec, double beta, double log_u)
{
    auto t = cumulant_triple_scaled(spec, beta);
    if (!(t.c1 > 0))
        return {-std::numeric_limits<double>::infinity(), 0};
    return {t.log_c1() - log_u, t.c2 / t.c1};
}

}  // namespace

SaddlePoint solve_saddle(LevyDensitySpec const& spec, double u)
{
    if (!(u > 0) || !std::isfinite(u))
        throw DomainError("saddle target u must be positive and finite, got "
                          + std::to_string(u));
    double const log_u = std::log(u);

    double lo = kSaddleBetaFloor;
    if (evaluate(spec, lo, log_u).phi > 0)
        throw RangeError("u = " + std::to_string(u)
                         + " is below C'(beta) on the whole window [-2048, inf)");

    double beta = u > std::numbers::e ? std::log(u * (1 + std::log1p(u))) : 0.0;
    Eval cur = evaluate(spec, beta, log_u);
    double hi = std::numeric_limits<double>::infinity();
    if (cur.phi >= 0)
    {
        hi = beta;
    }
    else
    {
        lo = beta;
        // Grow the upper end by doubling until it brackets the root
        double step = std::max(1.0, std::fabs(beta));
        for (int i = 0; i < 64 && !std::isfinite(hi); ++i)
        {
            double const trial = lo + step;
            if (evaluate(spec, trial, log_u).phi >= 0)
                hi = trial;
            else
                lo = trial;
            step *= 2;
        }
        if (!std::isfinite(hi))
            throw RangeError("could not bracket the saddle for u = " + std::to_string(u));
    }

    int it = 0;
    for (; it < kSaddleMaxIterations; ++it)
    {
        if (std::fabs(cur.phi) <= kSaddleTolerance * 0.5)
            break;
        if (cur.phi < 0)
            lo = std::max(lo, beta);
        else
            hi = std::min(hi, beta);
        double next = beta - cur.phi / cur.dphi;
        if (!(next > lo && next < hi) || cur.dphi <= 0)
            next = 0.5 * (lo + hi);
        if (next == beta || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::fabs(beta))
        {
            beta = next;
            cur = evaluate(spec, beta, log_u);
            break;
        }
        beta = next;
        cur = evaluate(spec, beta, log_u);
    }
    if (it == kSaddleMaxIterations)
        throw ConvergenceError("saddle solve for u = " + std::to_string(u) + " did not converge in "
                               + std::to_string(kSaddleMaxIterations) + " iterations");

    auto t = cumulant_triple_scaled(spec, beta);
    SaddlePoint sp;
    sp.u = u;
    sp.beta = beta;
    sp.c_at_beta = t.c0 * std::exp(t.log_scale);
    sp.log_sigma2 = t.log_c2();
    sp.sigma2 = std::exp(sp.log_sigma2);
    sp.beta_prime = 1 / sp.sigma2;
    sp.log_prefactor = sp.c_at_beta - u * beta;
    sp.iterations = it;
    if (!std::isfinite(sp.c_at_beta) || !std::isfinite(sp.sigma2))
        throw OverflowError("saddle quantities for u = " + std::to_string(u)
                            + " exceed the double range");
    return sp;
}

std::vector<SaddleGrowthRow> saddle_growth_report(LevyDensitySpec const& spec,
                                                  std::span<double const> u_list)
{
    std::vector<SaddleGrowthRow> rows;
    for (double u : u_list)
    {
        auto sp = solve_saddle(spec, u);
        double const lu = std::log(u);
        rows.push_back({u, sp.beta, std::exp(sp.beta - lu), std::exp(sp.beta - 1.1 * lu),
                        sp.sigma2 / u});
    }
    return rows;
}

}  // namespace levy
