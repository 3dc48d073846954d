#include <cmath>
#include <numbers>

#include "doctest.h"
#include "levy/cumulant.hpp"
#include "levy/error.hpp"
#include "levy/quadrature.hpp"

using namespace levy;

namespace
{
double rel(double a, double b)
{
    return std::fabs(a - b) / std::fabs(b);
}

LevyDensitySpec const& dickman()
{
    static auto s = builtin_dickman();
    return s;
}
LevyDensitySpec const& trunc03()
{
    static auto s = builtin_truncated(0.3);
    return s;
}
LevyDensitySpec const& unif0()
{
    static auto s = builtin_uniform(0);
    return s;
}
}  // namespace

TEST_CASE("dickman closed forms")
{
    auto t0 = cumulant_triple(dickman(), 0);
    CHECK(t0.c0 == 0);
    CHECK(t0.c1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t0.c2 == doctest::Approx(0.5).epsilon(1e-15));
    for (double b : {-30.0, -5.0, -0.1, 1e-6, 0.7, 3.0, 12.0, 40.0, 150.0, 600.0})
    {
        CAPTURE(b);
        auto t = cumulant_triple(dickman(), b);
        CHECK(rel(t.c1, std::expm1(b) / b) <= 1e-12);
        double const c2 = (std::exp(b) * (b - 1) + 1) / (b * b);
        if (std::fabs(b) > 1e-3)
            CHECK(rel(t.c2, c2) <= 1e-12);
        // e^beta = 1 + u beta
        CHECK(std::fabs(std::exp(b) - 1 - t.c1 * b) <= 1e-12 * std::exp(std::max(b, 0.0)) + 1e-15);
    }
}

TEST_CASE("uniform closed forms")
{
    auto t = cumulant_triple(unif0(), 1);
    CHECK(rel(t.c0, std::numbers::e - 2) <= 1e-14);
    CHECK(rel(t.c1, 1.0) <= 1e-14);  // int x e^x = 1
    CHECK(rel(t.c2, std::numbers::e - 2) <= 1e-14);
    auto z = complex_cumulant(unif0(), 0, std::numbers::pi);
    CHECK(z.real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::fabs(z.imag() - 2 / std::numbers::pi) < 1e-14);
    // small beta keeps relative accuracy
    auto s = cumulant_triple(unif0(), 1e-10);
    CHECK(rel(s.c0, 0.5e-10) <= 1e-9);
}

TEST_CASE("complex cumulant basics")
{
    for (auto const* spec : {&dickman(), &trunc03(), &unif0()})
    {
        auto z0 = complex_cumulant(*spec, 2.5, 0);
        CHECK(z0.real() == doctest::Approx(cumulant_triple(*spec, 2.5).c0).epsilon(1e-14));
        CHECK(z0.imag() == 0);
        for (double tau : {0.3, 4.0, 77.0})
        {
            auto p = complex_cumulant(*spec, 3, tau);
            auto m = complex_cumulant(*spec, 3, -tau);
            CHECK(p.real() == m.real());
            CHECK(p.imag() == -m.imag());
        }
    }
    for (double tau : {0.5, 3.0, 40.0})
        CHECK(complex_cumulant(dickman(), 0, tau).real() <= 0);
}

TEST_CASE("complex cumulant against direct quadrature")
{
    for (auto const* spec : {&dickman(), &trunc03(), &unif0()})
    {
        for (double beta : {-3.0, 0.0, 4.0, 15.0})
        {
            for (double tau : {0.7, 9.0, 120.0})
            {
                double const s = std::max(beta, 0.0);
                auto part = [&](bool imag) {
                    double total = 0;
                    for (auto const& p : spec->pieces())
                    {
                        auto f = [&](double x) {
                            double const e = std::exp(beta * x - s);
                            double const v = imag ? e * std::sin(tau * x)
                                                  : e * std::cos(tau * x) - std::exp(-s);
                            return v * p(x);
                        };
                        int const cells = std::max(1, static_cast<int>(tau));
                        std::vector<double> cuts;
                        for (int i = 1; i < cells; ++i)
                            cuts.push_back(p.lo + (p.hi - p.lo) * i / cells);
                        total += integrate_adaptive(f, p.lo, p.hi, 1e-13, 1e-15, 1 << 16, cuts).value;
                    }
                    return total * std::exp(s);
                };
                auto z = complex_cumulant(*spec, beta, tau);
                double const tol = 1e-10 * std::exp(s);
                CAPTURE(beta);
                CAPTURE(tau);
                CHECK(std::fabs(z.real() - part(false)) <= tol);
                CHECK(std::fabs(z.imag() - part(true)) <= tol);
            }
        }
    }
}

TEST_CASE("Campbell consistency and convexity")
{
    for (auto const* spec : {&dickman(), &trunc03(), &unif0()})
    {
        double prev = 0;
        for (double beta : {-8.0, -1.0, 0.0, 0.5, 3.0, 9.0, 25.0})
        {
            auto t = cumulant_triple(*spec, beta);
            auto moment = [&](int k) {
                double total = 0;
                for (auto const& p : spec->pieces())
                    total += integrate_adaptive(
                                 [&](double x) { return std::pow(x, k) * std::exp(beta * x) * p(x); },
                                 p.lo, p.hi, 1e-14)
                                 .value;
                return total;
            };
            CHECK(rel(t.c1, moment(1)) <= 1e-10);
            CHECK(rel(t.c2, moment(2)) <= 1e-10);
            CHECK(t.c2 > 0);
            CHECK(t.c2 <= t.c1);
            CHECK(t.c1 > prev);
            prev = t.c1;
        }
    }
}

TEST_CASE("oscillation deficit lower bounds")
{
    for (auto const* spec : {&dickman(), &trunc03(), &unif0()})
    {
        CHECK(oscillation_deficit(*spec, 5, 0) == 0);
        for (double beta : {2.0, 5.0, 10.0, 20.0})
        {
            double const s2 = cumulant_triple(*spec, beta).c2;
            for (int k = 1; k <= 64; ++k)
            {
                double const tau = k * std::numbers::pi / 64;
                double const h = oscillation_deficit(*spec, beta, tau);
                CHECK(h >= 2 * tau * tau * s2 / (std::numbers::pi * std::numbers::pi));
                // equals C(beta) - Re C(beta - i tau)
                double const alt = cumulant_triple(*spec, beta).c0
                                   - complex_cumulant(*spec, beta, -tau).real();
                CHECK(std::fabs(h - alt) <= 1e-11 * std::exp(beta));
            }
        }
    }
    double const eps = dickman().eps_floor().eps;
    double const b = 20;
    CHECK(oscillation_deficit(dickman(), b, 2 * std::numbers::pi)
          > eps * std::numbers::pi * std::numbers::pi / 8 * std::exp(b) / (b * b * b));
}

TEST_CASE("growth ratios stay bracketed")
{
    // Empirical bracket for c0/c1 and c1/c2 over beta in [10, 40]
    constexpr double kRatioBracket = 1.25;
    for (auto const* spec : {&dickman(), &trunc03(), &unif0()})
    {
        for (double beta = 10; beta <= 40; beta += 2.5)
        {
            auto t = cumulant_triple(*spec, beta);
            for (double r : {t.c0 / t.c1, t.c1 / t.c2})
            {
                CHECK(r >= 1 / kRatioBracket);
                CHECK(r <= kRatioBracket);
            }
        }
    }
}

TEST_CASE("atom mass")
{
    CHECK(atom_mass(dickman(), 3) == 0);
    CHECK(atom_mass(trunc03(), 0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(atom_mass(unif0(), 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    // int_0^1 e^{2x} dx = (e^2 - 1)/2
    CHECK(log_atom_mass(unif0(), 2) == doctest::Approx(-std::expm1(2.0) / 2).epsilon(1e-14));
    CHECK(atom_mass(unif0(), 800) == 0);
}

TEST_CASE("overflow is reported, log accessors stay finite")
{
    CHECK_THROWS_AS(cumulant_triple(dickman(), 800), OverflowError);
    auto s = cumulant_triple_scaled(dickman(), 800);
    // log C'(beta) = log((e^b - 1)/b)
    CHECK(s.log_c1() == doctest::Approx(800 - std::log(800.0)).epsilon(1e-14));
}
