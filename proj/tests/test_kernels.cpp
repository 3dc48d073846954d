#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "levy/kernels.hpp"

using namespace levy::kernels;

TEST_CASE("dot: simd matches scalar")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1, 1);
    for (std::size_t n : {0, 1, 3, 4, 15, 16, 17, 100, 4097})
    {
        std::vector<double> a(n), b(n);
        double mag = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            a[i] = unif(rng);
            b[i] = unif(rng);
            mag += std::fabs(a[i] * b[i]);
        }
        double const ref = scalar::dot(a.data(), b.data(), n);
        double const fast = avx2::dot(a.data(), b.data(), n);
        CAPTURE(n);
        CHECK(std::fabs(ref - fast) <= 1e-14 * (mag + 1));
    }
}

TEST_CASE("phase_sum: scalar matches direct trigonometry")
{
    std::vector<double> re{0.5, -1.0, 0.25, 2.0, 0.1, 0.3, -0.7};
    std::vector<double> im{0.0, 0.3, -0.2, 0.1, 0.9, -0.4, 0.2};
    std::vector<double> t{0.0, 0.7, 3.0};
    std::vector<double> out(t.size());
    double const k0 = 2, delta = 0.05;
    scalar::phase_sum(re.data(), im.data(), re.size(), k0, delta, t.data(), t.size(), out.data());
    for (std::size_t j = 0; j < t.size(); ++j)
    {
        double ref = 0;
        for (std::size_t k = 0; k < re.size(); ++k)
        {
            double const ph = (k0 + k) * delta * t[j];
            ref += re[k] * std::cos(ph) + im[k] * std::sin(ph);
        }
        CHECK(out[j] == doctest::Approx(ref).epsilon(1e-14));
    }
}

TEST_CASE("phase_sum: simd matches scalar")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1, 1);
    for (std::size_t n : {1, 63, 64, 65, 5000})
    {
        for (std::size_t nt : {1, 3, 4, 9})
        {
            std::vector<double> re(n), im(n), t(nt), a(nt), b(nt);
            double mag = 0;
            for (std::size_t k = 0; k < n; ++k)
            {
                re[k] = unif(rng);
                im[k] = unif(rng);
                mag += std::fabs(re[k]) + std::fabs(im[k]);
            }
            for (auto& x : t)
                x = 20 * (unif(rng) + 1);
            scalar::phase_sum(re.data(), im.data(), n, 3, 0.01, t.data(), nt, a.data());
            avx2::phase_sum(re.data(), im.data(), n, 3, 0.01, t.data(), nt, b.data());
            for (std::size_t j = 0; j < nt; ++j)
                CHECK(std::fabs(a[j] - b[j]) <= 1e-13 * mag);
        }
    }
}

TEST_CASE("dispatch respects override")
{
    Isa const best = detected_isa();
    set_active_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    set_active_isa(Isa::avx2);
    CHECK(active_isa() == best);
}
