#include "levy/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace levy
{
namespace kernels
{
namespace
{

Isa detect()
{
#if defined(LEVY_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Isa::avx2;
#endif
    return Isa::scalar;
}

std::atomic<int>& active_slot()
{
    static std::atomic<int> slot{static_cast<int>(detect())};
    return slot;
}

}  // namespace

Isa detected_isa()
{
    static Isa const isa = detect();
    return isa;
}

Isa active_isa()
{
    return static_cast<Isa>(active_slot().load(std::memory_order_relaxed));
}

void set_active_isa(Isa isa)
{
    if (static_cast<int>(isa) > static_cast<int>(detected_isa()))
        isa = detected_isa();
    active_slot().store(static_cast<int>(isa), std::memory_order_relaxed);
}

char const* to_string(Isa isa)
{
    switch (isa)
    {
        case Isa::avx2:
            return "avx2";
        case Isa::scalar:
            break;
    }
    return "scalar";
}

double dot(double const* a, double const* b, std::size_t n)
{
#ifdef LEVY_BUILD_AVX2
    if (active_isa() == Isa::avx2)
        return avx2::dot(a, b, n);
#endif
    return scalar::dot(a, b, n);
}

void phase_sum(double const* re, double const* im, std::size_t n, double k0,
               double delta, double const* t, std::size_t nt, double* out)
{
#ifdef LEVY_BUILD_AVX2
    if (active_isa() == Isa::avx2)
        return avx2::phase_sum(re, im, n, k0, delta, t, nt, out);
#endif
    scalar::phase_sum(re, im, n, k0, delta, t, nt, out);
}

namespace scalar
{

double dot(double const* a, double const* b, std::size_t n)
{
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
        s += a[i] * b[i];
    return s;
}

void phase_sum(double const* re, double const* im, std::size_t n, double k0,
               double delta, double const* t, std::size_t nt, double* out)
{
    for (std::size_t j = 0; j < nt; ++j)
    {
        double const step = delta * t[j];
        double const cs = std::cos(step), sn = std::sin(step);
        double acc = 0;
        double c = 0, s = 0;
        for (std::size_t k = 0; k < n; ++k)
        {
            if (k % kPhaseResync == 0)
            {
                double const ph = (k0 + static_cast<double>(k)) * step;
                c = std::cos(ph);
                s = std::sin(ph);
            }
            acc += re[k] * c + im[k] * s;
            double const c2 = c * cs - s * sn;
            s = s * cs + c * sn;
            c = c2;
        }
        out[j] = acc;
    }
}

}  // namespace scalar

#ifndef LEVY_BUILD_AVX2
namespace avx2
{
double dot(double const* a, double const* b, std::size_t n)
{
    return scalar::dot(a, b, n);
}
void phase_sum(double const* re, double const* im, std::size_t n, double k0,
               double delta, double const* t, std::size_t nt, double* out)
{
    scalar::phase_sum(re, im, n, k0, delta, t, nt, out);
}
}  // namespace avx2
#endif

}  // namespace kernels
}  // namespace levy
