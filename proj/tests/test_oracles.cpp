#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "levy/cumulant.hpp"
#include "levy/error.hpp"
#include "levy/oracles.hpp"
#include "levy/special.hpp"

using namespace levy;

namespace
{
constexpr double kH = 1.0 / 2048;
double const kEmg = std::exp(-kEulerGamma);

DensityGrid const& dickman_grid()
{
    static DensityGrid const grid = volterra_density(builtin_dickman(), 12, kH);
    return grid;
}

DensityGrid const& truncated_grid()
{
    static DensityGrid const grid = volterra_density(builtin_truncated(0.3), 12, kH);
    return grid;
}
}  // namespace

TEST_CASE("dickman grid closed forms")
{
    auto const& grid = dickman_grid();
    CHECK(grid.atom == 0);
    CHECK(grid.err_bound < 1e-7);
    CHECK(grid.at(0.5) == doctest::Approx(kEmg).epsilon(1e-12));
    CHECK(grid.at(1.0) == doctest::Approx(kEmg).epsilon(1e-9));
    CHECK(grid.at(2.0) == doctest::Approx(kEmg * (1 - std::log(2.0))).epsilon(1e-7));
    CHECK(grid.at(1.5) == doctest::Approx(kEmg * (1 - std::log(1.5))).epsilon(1e-7));
}

TEST_CASE("rho closed forms and integral")
{
    auto rho = dickman_rho(30, 1.0 / 1024);
    for (std::size_t k = 0; k <= 1024; ++k)
        CHECK(rho.values[k] == 1.0);
    for (double u : {1.25, 1.5, 2.0})
        CHECK(rho.at(u) == doctest::Approx(1 - std::log(u)).epsilon(1e-9));
    double sum = 0;
    for (std::size_t k = 0; k + 1 < rho.size(); ++k)
        sum += 0.5 * rho.h * (rho.values[k] + rho.values[k + 1]);
    CHECK(sum == doctest::Approx(std::exp(kEulerGamma)).epsilon(1e-6));
    // rho and the density differ by the constant e^{-gamma}
    auto const& f = dickman_grid();
    for (double u : {2.5, 3.0, 4.75, 7.0})
        CHECK(f.at(u) == doctest::Approx(kEmg * rho.at(u)).epsilon(1e-6));
}

TEST_CASE("truncated grid single arrival region")
{
    auto const& grid = truncated_grid();
    CHECK(grid.atom == doctest::Approx(0.3).epsilon(1e-14));
    // Only one arrival fits below 0.6: f = P0 g
    for (double t : {0.3125, 0.4375, 0.5, 0.59375})
        CHECK(grid.at(t) == doctest::Approx(0.3 / t).epsilon(1e-12));
    CHECK(grid.at(0.25) == 0);
}

TEST_CASE("grid mass is one")
{
    CHECK(grid_mass(truncated_grid(), builtin_truncated(0.3)).value
          == doctest::Approx(1).epsilon(1e-6));
    CHECK(grid_mass(dickman_grid(), builtin_dickman()).value == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("size-bias identity residual")
{
    // t f(t) = int_{0.3}^1 f(t - x) dx away from the jumps of f at 0.3 and 1
    auto const& grid = truncated_grid();
    for (double t : {2.5, 3.5, 5.0})
    {
        double sum = 0;
        int const n = 4480;  // 0.7 / n is a multiple of h / 2
        double const dx = 0.7 / n;
        for (int i = 0; i <= n; ++i)
        {
            double const w = i == 0 || i == n ? 0.5 : 1.0;
            sum += w * grid.at(t - 0.3 - i * dx);
        }
        CHECK(t * grid.at(t) == doctest::Approx(sum * dx).epsilon(1e-5));
    }
}

TEST_CASE("tail values at the edges")
{
    CHECK(oracle_tail(dickman_grid(), 1.0, builtin_dickman()).value
          == doctest::Approx(1 - kEmg).epsilon(1e-6));
    CHECK(oracle_tail(truncated_grid(), 0.0, builtin_truncated(0.3)).value
          == doctest::Approx(0.7).epsilon(1e-6));
    CHECK_THROWS_AS(oracle_tail(truncated_grid(), 11.0, builtin_truncated(0.3)), DomainError);
}

TEST_CASE("laplace transform of the grid")
{
    auto const spec = builtin_truncated(0.3);
    auto const& grid = truncated_grid();
    for (double beta : {-1.0, 0.5, 1.0})
    {
        double sum = grid.atom;
        for (std::size_t k = 0; k + 1 < grid.size(); ++k)
            sum += 0.5 * grid.h
                   * (std::exp(beta * grid.t(k)) * grid.values[k]
                      + std::exp(beta * grid.t(k + 1)) * grid.values[k + 1]);
        double const c = cumulant_triple(spec, beta).c0;
        // jumps of f at 0.3 and 0.6 cost O(h) in the trapezoid sum
        CHECK(sum == doctest::Approx(std::exp(c)).epsilon(2e-4));
    }
}

TEST_CASE("fourier agrees with volterra")
{
    auto const spec = builtin_truncated(0.3);
    for (double u : {3.0, 5.0, 8.0})
    {
        auto const f = fourier_density(spec, u);
        auto const& grid = truncated_grid();
        CHECK(std::fabs(f.f - grid.at(u)) <= f.err_bound + grid.error_at(u) + 1e-9);
        CHECK(f.err_bound < 1e-6 * f.f);
    }
    auto const f = fourier_density(builtin_dickman(), 5.0);
    CHECK(std::fabs(f.f - dickman_grid().at(5.0)) <= f.err_bound + 1e-8);
}

TEST_CASE("fourier tilt invariance")
{
    auto const spec = builtin_truncated(0.3);
    std::vector<double> ts{3.0, 4.0};
    auto a = fourier_density_at(spec, 0.5, ts);
    auto b = fourier_density_at(spec, 1.5, ts);
    for (std::size_t i = 0; i < ts.size(); ++i)
        CHECK(std::fabs(a[i].f - b[i].f) <= a[i].err_bound + b[i].err_bound);
}

TEST_CASE("fourier single arrival add-back")
{
    auto const f = fourier_density(builtin_truncated(0.3), 0.45);
    CHECK(f.f == doctest::Approx(0.3 / 0.45).epsilon(1e-6));
}

TEST_CASE("march rejects unknown seeds and bad steps")
{
    auto const twice = make_spec({DensityPiece{0, 1, 2, {}}}, "2/x");
    CHECK_THROWS_AS(volterra_density(twice, 4, kH), ModeError);
    CHECK_THROWS_AS(volterra_density(builtin_truncated(0.3), 4, 0.01), DomainError);
    CHECK_THROWS_AS(dickman_rho(1.5, kH), DomainError);
}

TEST_CASE("grid csv header")
{
    auto grid = volterra_density(builtin_truncated(0.5), 2, 1.0 / 1024);
    std::ostringstream os;
    grid.write_csv(os);
    auto const s = os.str();
    CHECK(s.rfind("# h=", 0) == 0);
    CHECK(s.find("# method=volterra") != std::string::npos);
    CHECK(s.find("\nt,f\n") != std::string::npos);
}
