#include <cmath>
#include <numbers>

#include "doctest.h"
#include "levy/asymptotics.hpp"
#include "levy/cumulant.hpp"
#include "levy/error.hpp"
#include "levy/special.hpp"

using namespace levy;

namespace
{
constexpr double kDickmanErr2 = 0.027844617434043872;
}

TEST_CASE("formula recomputed from saddle fields")
{
    for (auto const& spec : {builtin_dickman(), builtin_truncated(0.3), builtin_uniform(0)})
    {
        for (double u : {2.0, 5.0, 10.0, 40.0, 300.0})
        {
            auto sp = solve_saddle(spec, u);
            auto est = density_asymptote(spec, u);
            double const direct = std::exp(sp.c_at_beta - u * sp.beta)
                                  / (std::sqrt(2 * std::numbers::pi) * std::sqrt(sp.sigma2));
            CHECK(est.f_hat == doctest::Approx(direct).epsilon(1e-12));
            CHECK(est.tail_hat * est.beta == doctest::Approx(est.f_hat).epsilon(1e-15));
            CHECK(est.log_tail_hat == doctest::Approx(est.log_f_hat - std::log(est.beta)));
        }
    }
}

TEST_CASE("log domain survives underflow")
{
    auto est = density_asymptote(builtin_dickman(), 1e4);
    CHECK(est.f_hat == 0);
    CHECK(std::isfinite(est.log_f_hat));
    CHECK(est.log_f_hat < -700);
}

TEST_CASE("error order metadata")
{
    CHECK(density_asymptote(builtin_truncated(0.3), 5).claimed_rel_error_order
          == ErrorOrder::one_over_u);
    CHECK(density_asymptote(builtin_dickman(), 5).claimed_rel_error_order
          == ErrorOrder::one_over_sqrt_u);
}

TEST_CASE("limit at the mean")
{
    // beta -> 0+: C(beta) - u beta -> 0, sigma^2 -> 1/2
    auto est = density_asymptote(builtin_dickman(), 1 + 1e-9);
    CHECK(est.log_f_hat == doctest::Approx(-0.5 * std::log(std::numbers::pi)).epsilon(1e-8));
}

TEST_CASE("dickman forms agree")
{
    for (double u : {1.5, 2.0, 10.0, 20.0, 100.0})
    {
        double const rho = dickman_asymptote(u);
        auto est = density_asymptote(builtin_dickman(), u);
        CHECK(std::exp(-kEulerGamma) * rho == doctest::Approx(est.f_hat).epsilon(1e-12));
    }
    // rho(2) = 1 - log 2; relative error of the estimate frozen from a first run
    double const err2 = dickman_asymptote(2) / (1 - std::log(2.0)) - 1;
    CHECK(err2 == doctest::Approx(kDickmanErr2).epsilon(1e-6));
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(density_asymptote(builtin_truncated(0.3), 0.7), DomainError);
    CHECK_THROWS_AS(density_asymptote(builtin_truncated(0.3), 0.5), DomainError);
    CHECK_THROWS_AS(dickman_asymptote(1.0), DomainError);
    auto rejected = parse_spec(R"({"pieces":[{"lo":0,"hi":1,"inv_coeff":0.5,"poly":[]}]})");
    CHECK_THROWS_AS(density_asymptote(rejected, 3), PreconditionError);
}

TEST_CASE("standard normal")
{
    CHECK(tilted_gaussian(0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(tilted_gaussian(1) == doctest::Approx(std::exp(-0.5) / std::sqrt(2 * std::numbers::pi)));
    for (double y : {0.1, 1.7, 5.0})
        CHECK(tilted_gaussian(y) == tilted_gaussian(-y));
}
