#include <cmath>

#include <immintrin.h>

#include "levy/kernels.hpp"

namespace levy
{
namespace kernels
{
namespace avx2
{

double dot(double const* a, double const* b, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16)
    {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    __m256d const acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d const hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i)
        s += a[i] * b[i];
    return s;
}

void phase_sum(double const* re, double const* im, std::size_t n, double k0,
               double delta, double const* t, std::size_t nt, double* out)
{
    for (std::size_t j = 0; j < nt; j += 4)
    {
        std::size_t const lanes = nt - j < 4 ? nt - j : 4;
        alignas(32) double step[4], cs[4], sn[4], c0[4], s0[4], res[4];
        for (std::size_t l = 0; l < 4; ++l)
        {
            step[l] = delta * t[j + (l < lanes ? l : lanes - 1)];
            cs[l] = std::cos(step[l]);
            sn[l] = std::sin(step[l]);
        }
        __m256d const vcs = _mm256_load_pd(cs);
        __m256d const vsn = _mm256_load_pd(sn);
        __m256d acc = _mm256_setzero_pd();
        __m256d c = _mm256_setzero_pd();
        __m256d s = _mm256_setzero_pd();
        for (std::size_t k = 0; k < n; ++k)
        {
            if (k % kPhaseResync == 0)
            {
                double const kk = k0 + static_cast<double>(k);
                for (std::size_t l = 0; l < 4; ++l)
                {
                    c0[l] = std::cos(kk * step[l]);
                    s0[l] = std::sin(kk * step[l]);
                }
                c = _mm256_load_pd(c0);
                s = _mm256_load_pd(s0);
            }
            acc = _mm256_fmadd_pd(_mm256_set1_pd(re[k]), c, acc);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(im[k]), s, acc);
            __m256d const c2 = _mm256_fmsub_pd(c, vcs, _mm256_mul_pd(s, vsn));
            s = _mm256_fmadd_pd(s, vcs, _mm256_mul_pd(c, vsn));
            c = c2;
        }
        _mm256_store_pd(res, acc);
        for (std::size_t l = 0; l < lanes; ++l)
            out[j + l] = res[l];
    }
}

}  // namespace avx2
}  // namespace kernels
}  // namespace levy
