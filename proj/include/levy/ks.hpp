#pragma once

#include <functional>
#include <span>

namespace levy
{

// sup |F_n - F| for sorted data against a continuous CDF
double ks_one_sample(std::span<double const> sorted, std::function<double(double)> const& cdf);

// sup |F_n - G_m| for two sorted samples
double ks_two_sample(std::span<double const> a, std::span<double const> b);

// 1% critical values (asymptotic Kolmogorov distribution)
double ks_critical_1pct(std::size_t n);
double ks_critical_1pct(std::size_t n, std::size_t m);

// Standard normal CDF
double normal_cdf(double x);

}  // namespace levy
