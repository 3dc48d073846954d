#include <cmath>
#include <vector>

#include "doctest.h"
#include "levy/special.hpp"

using namespace levy;

namespace
{
struct Ref
{
    cplx w;
    cplx value;
};

// F(w) = -E1(-w) - log(-w) - gamma at 40 digits
Ref const kRefs[] = {
    {{0.5, 0}, {0.5701514205215860287, 0.0}},
    {{3, 0}, {8.258004617055774006, 0.0}},
    {{-7, 0}, {-2.523241295688456504, 0.0}},
    {{-50, 0}, {-4.489238670329678919, 0.0}},
    {{30, 0}, {368973209403.295784, 0.0}},
    {{100, 0}, {2.715552744853879822e+41, 0.0}},
    {{2.0, 5.0}, {-3.501059174409998508, 1.30090880025979683}},
    {{-3.0, 40.0}, {-4.267900010044037183, 1.496666274351747443}},
    {{60.0, 3.0}, {-1.897989497806977882e+24, 3.698001717911158994e+23}},
    {{10.0, 200.0}, {-99.44886616889532063, -56.2435759369699471}},
    {{0.0, 1000.0}, {-7.48414462837257923, 1.570233121968771218}},
    {{-20.0, -30.0}, {-4.162275436676890655, -0.9827937232720674801}},
    {{50.0, -50.0}, {3.612852861664926882e+19, 6.464880186133874196e+19}},
};
}  // namespace

TEST_CASE("entire exponential integral")
{
    for (auto const& r : kRefs)
    {
        CAPTURE(r.w);
        cplx const v = entire_expint(r.w);
        CHECK(std::abs(v - r.value) <= 1e-13 * std::abs(r.value));
    }
}

TEST_CASE("scaling by e^-s")
{
    cplx const w(80, 7);
    cplx const a = entire_expint_scaled(w, 80);
    cplx const b = entire_expint(w) * std::exp(-80.0);
    CHECK(std::abs(a - b) <= 1e-13 * std::abs(b));
    // Far beyond the overflow threshold the scaled value stays finite
    cplx const big = entire_expint_scaled(cplx(2000, 0), 2000);
    CHECK(std::isfinite(big.real()));
    CHECK(big.real() == doctest::Approx(1.0 / 2000 * (1 + 1.0 / 2000)).epsilon(1e-6));
}

TEST_CASE("moments agree across methods")
{
    // Compare each regime against a dense Gauss rule evaluated directly
    for (cplx z : {cplx(0.3, 0), cplx(-4, 2), cplx(25, 0), cplx(-300, 0), cplx(3, 60)})
    {
        for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{0.3, 0.7}})
        {
            double const s = std::max(z.real(), 0.0);
            std::vector<cplx> m(5);
            scaled_moments(z, a, b, s, m);
            // composite Simpson with many cells as the reference
            int const n = 200000;
            double const h = (b - a) / n;
            for (int k = 0; k < 5; ++k)
            {
                cplx ref = 0;
                for (int i = 0; i <= n; ++i)
                {
                    double const x = a + i * h;
                    double const wgt = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
                    ref += wgt * std::pow(x, k) * std::exp(z * x - s);
                }
                ref *= h / 3;
                CAPTURE(z);
                CAPTURE(k);
                CHECK(std::abs(m[k] - ref) <= 1e-10 * std::max(std::abs(ref), 1e-300) + 1e-300);
            }
        }
    }
}

TEST_CASE("expm1 moments keep relative accuracy at tiny z")
{
    std::vector<cplx> m(3);
    scaled_moments_expm1(cplx(1e-9, 0), 0, 1, 0, m);
    // int x^k (e^{zx}-1) ~ z/(k+2)
    for (int k = 0; k < 3; ++k)
        CHECK(m[k].real() == doctest::Approx(1e-9 / (k + 2)).epsilon(1e-8));
}

TEST_CASE("expm1_over_x")
{
    CHECK(expm1_over_x(2.0, 1e-9) == doctest::Approx(2.0 * (1 + 1e-9)).epsilon(1e-15));
    CHECK(expm1_over_x(2.0, 0.5) == doctest::Approx(std::expm1(1.0) / 0.5).epsilon(1e-15));
}
