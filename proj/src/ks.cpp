#include "levy/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace levy
{
namespace
{
constexpr double kKolmogorov1pct = 1.6276;
}

double ks_one_sample(std::span<double const> sorted, std::function<double(double)> const& cdf)
{
    double const n = static_cast<double>(sorted.size());
    double d = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        double const f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::span<double const> a, std::span<double const> b)
{
    double const n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size())
    {
        double const x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

double ks_critical_1pct(std::size_t n)
{
    return kKolmogorov1pct / std::sqrt(static_cast<double>(n));
}

double ks_critical_1pct(std::size_t n, std::size_t m)
{
    double const nn = static_cast<double>(n), mm = static_cast<double>(m);
    return kKolmogorov1pct * std::sqrt((nn + mm) / (nn * mm));
}

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace levy
