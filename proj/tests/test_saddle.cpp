#include <cmath>
#include <vector>

#include "doctest.h"
#include "levy/cumulant.hpp"
#include "levy/error.hpp"
#include "levy/saddle.hpp"

using namespace levy;

TEST_CASE("dickman saddle")
{
    auto d = builtin_dickman();
    auto s1 = solve_saddle(d, 1.0);
    CHECK(std::fabs(s1.beta) < 1e-11);
    CHECK(s1.sigma2 == doctest::Approx(0.5).epsilon(1e-11));
    CHECK(std::fabs(s1.log_prefactor) < 1e-11);

    // roots of e^b = 1 + u b found with a 30-digit root finder
    struct
    {
        double u, beta;
    } const refs[] = {{2, 1.256431208626169677},
                      {5, 2.6603990584636849904},
                      {10, 3.6149504270875306297},
                      {20, 4.5139125430161851408},
                      {50, 5.6466149309405556719},
                      {1000, 9.1181296448337879322}};
    for (auto r : refs)
    {
        auto sp = solve_saddle(d, r.u);
        CAPTURE(r.u);
        CHECK(sp.beta == doctest::Approx(r.beta).epsilon(1e-11));
        CHECK(std::fabs(std::exp(sp.beta) - 1 - r.u * sp.beta) <= 1e-9 * std::exp(sp.beta));
        CHECK(sp.beta_prime * sp.sigma2 == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("truncated saddle at the mean")
{
    auto t = builtin_truncated(0.3);
    CHECK(std::fabs(solve_saddle(t, 0.7).beta) < 1e-10);
}

TEST_CASE("round trip beta -> u -> beta")
{
    for (auto const& spec : {builtin_dickman(), builtin_truncated(0.3), builtin_uniform(0)})
    {
        for (double b : {-5.0, 0.0, 1.0, 5.0, 10.0, 20.0})
        {
            double const u = cumulant_triple(spec, b).c1;
            auto sp = solve_saddle(spec, u);
            CAPTURE(b);
            CHECK(std::fabs(sp.beta - b) <= 1e-9);
            CHECK(std::fabs(cumulant_triple(spec, sp.beta).c1 / u - 1) <= kSaddleTolerance);
        }
    }
}

TEST_CASE("extreme targets")
{
    auto t = builtin_truncated(0.3);
    // very negative tilt concentrates on the lower support end
    auto sp = solve_saddle(t, 1e-30);
    CHECK(sp.beta < -50);
    CHECK(std::fabs(cumulant_triple(t, sp.beta).c1 / 1e-30 - 1) <= 1e-10);
    CHECK_THROWS_AS(solve_saddle(t, 1e-300), RangeError);
    auto big = solve_saddle(builtin_dickman(), 1e250);
    CHECK(big.beta > 500);
    CHECK_THROWS_AS(solve_saddle(t, -1), DomainError);
}

TEST_CASE("monotone in u")
{
    auto spec = builtin_uniform(0);
    double prev = -1e9;
    for (double u = 0.01; u < 500; u *= 1.7)
    {
        double const b = solve_saddle(spec, u).beta;
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("growth report trends")
{
    std::vector<double> us{10, 100, 1000, 1e4, 1e5};
    auto rows = saddle_growth_report(builtin_dickman(), us);
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        CHECK(rows[i].eb_over_u > rows[i - 1].eb_over_u);
        CHECK(rows[i].sigma2_over_u > rows[i - 1].sigma2_over_u);
        CHECK(rows[i].sigma2_over_u <= 1);
    }
    // e^beta/u^{1.1} eventually decreases
    CHECK(rows.back().eb_over_u11 < rows[rows.size() - 2].eb_over_u11);
    for (auto const& spec : {builtin_truncated(0.3), builtin_uniform(0)})
    {
        auto r = saddle_growth_report(spec, us);
        for (std::size_t i = 1; i < r.size(); ++i)
            CHECK(r[i].sigma2_over_u > r[i - 1].sigma2_over_u);
    }
}
