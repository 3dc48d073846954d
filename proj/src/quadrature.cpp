#include "levy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "levy/error.hpp"

namespace levy
{
namespace
{

GaussRule make_gauss_legendre(int n)
{
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it)
        {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1)
            {
                p1 = x;
                p0 = 1;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double const dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        // Recompute derivative at the converged node
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k)
        {
            double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        double const w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

// Kronrod 15-point nodes (positive half) and weights, with embedded Gauss 7.
constexpr double kXgk[8] = {0.991455371120812639206854697526329,
                            0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926,
                            0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013,
                            0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245,
                            0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970,
                            0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518,
                            0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550,
                            0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649,
                            0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Segment
{
    double a, b, value, error;
    bool operator<(Segment const& o) const { return error < o.error; }
};

Segment gk15(std::function<double(double)> const& f, double a, double b)
{
    double const c = 0.5 * (a + b);
    double const h = 0.5 * (b - a);
    double const fc = f(c);
    double rk = fc * kWgk[7];
    double rg = fc * kWg[3];
    for (int j = 0; j < 7; ++j)
    {
        double const dx = h * kXgk[j];
        double const s = f(c - dx) + f(c + dx);
        rk += kWgk[j] * s;
        if (j % 2 == 1)
            rg += kWg[j / 2] * s;
    }
    Segment seg{a, b, rk * h, std::fabs((rk - rg) * h)};
    if (!std::isfinite(seg.value))
        seg.error = std::numeric_limits<double>::infinity();
    return seg;
}

}  // namespace

GaussRule const& gauss_legendre(int n)
{
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<GaussRule>(make_gauss_legendre(n));
    return *slot;
}

QuadratureResult integrate_adaptive(std::function<double(double)> const& f,
                                    double a,
                                    double b,
                                    double rel_tol,
                                    double abs_tol,
                                    int max_subintervals,
                                    std::span<double const> breakpoints)
{
    if (a == b)
        return {};
    std::vector<double> edges{a};
    for (double x : breakpoints)
        if (x > a && x < b)
            edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<Segment> heap;
    double total = 0, err = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        if (edges[i + 1] <= edges[i])
            continue;
        auto s = gk15(f, edges[i], edges[i + 1]);
        total += s.value;
        err += s.error;
        heap.push(s);
    }
    int count = static_cast<int>(heap.size());
    while (err > std::max(abs_tol, rel_tol * std::fabs(total)))
    {
        if (count >= max_subintervals)
            throw QuadratureError("adaptive quadrature budget of "
                                  + std::to_string(max_subintervals)
                                  + " subintervals exhausted");
        auto s = heap.top();
        heap.pop();
        double const m = 0.5 * (s.a + s.b);
        auto l = gk15(f, s.a, m);
        auto r = gk15(f, m, s.b);
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
        ++count;
        if (!std::isfinite(total))
            throw QuadratureError("non-finite integrand");
    }
    // Recompute sums to shed accumulated cancellation in the running totals
    total = 0;
    err = 0;
    while (!heap.empty())
    {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {total, err, count};
}

}  // namespace levy
