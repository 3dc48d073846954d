#include "levy/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "levy/cumulant.hpp"
#include "levy/error.hpp"
#include "levy/ks.hpp"
#include "levy/parallel.hpp"
#include "levy/quadrature.hpp"
#include "levy/rng.hpp"

namespace levy
{
namespace
{

constexpr std::size_t kBlock = 8192;
constexpr std::size_t kCellsPerKnot = 16;
constexpr std::uint32_t kLowerStream = 1;

// Run body(i) for every draw, in blocks, writing into preallocated slots
template<class F>
void for_draws(std::size_t n, F&& body)
{
    std::size_t const blocks = (n + kBlock - 1) / kBlock;
    parallel_for(blocks, [&](std::size_t b) {
        std::size_t const end = std::min(n, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i)
            body(i);
    });
}

}  // namespace

double SampleBatch::mean() const
{
    double s = 0;
    for (double v : values)
        s += v;
    return s / static_cast<double>(values.size());
}

double SampleBatch::variance() const
{
    double const m = mean();
    double s = 0;
    for (double v : values)
        s += (v - m) * (v - m);
    return s / static_cast<double>(values.size() - 1);
}

void SampleBatch::write_csv(std::ostream& os) const
{
    char buf[64];
    os << "# spec=" << spec_label << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", beta);
    os << "# beta=" << buf << '\n';
    os << "# seed=" << seed << '\n';
    os << "# n=" << n << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", truncation_bias_bound);
    os << "# truncation_bias_bound=" << buf << '\n';
    os << "value\n";
    for (double v : values)
    {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        os << buf;
    }
}

ArrivalSampler::ArrivalSampler(LevyDensitySpec const& spec, double beta)
{
    if (!spec.finite_mass())
        throw DomainError("arrival sampling needs finite mass; restrict '" + spec.label()
                          + "' to [a, 1] first");
    double const log_mass = log_tilted_mass(spec, beta);
    if (!(log_mass <= std::log(kMaxSampledMass)))
        throw MassError("tilted mass e^" + std::to_string(log_mass)
                        + " is beyond the sampling budget");
    double const s = beta > 0 ? beta : beta * spec.support_lo();
    auto const& rule = gauss_legendre(8);

    std::vector<double> piece_mass;
    for (auto const& p : spec.pieces())
    {
        auto dens = [&](double x) { return std::exp(beta * x - s) * p(x); };
        auto cell_integral = [&](double a, double b) {
            double const mid = 0.5 * (a + b), half = 0.5 * (b - a);
            double v = 0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q)
                v += rule.weights[q] * dens(mid + half * rule.nodes[q]);
            return v * half;
        };
        std::size_t const cells = kKnots * kCellsPerKnot;
        double const w = (p.hi - p.lo) / static_cast<double>(cells);
        std::vector<double> cum(cells + 1, 0.0);
        for (std::size_t c = 0; c < cells; ++c)
            cum[c + 1] = cum[c] + cell_integral(p.lo + c * w, p.lo + (c + 1) * w);
        double const total = cum.back();
        piece_mass.push_back(total);

        Table tab{p.lo, p.hi, std::vector<double>(kKnots + 1), std::vector<double>(kKnots + 1)};
        tab.q[0] = p.lo;
        tab.q[kKnots] = p.hi;
        std::size_t c = 0;
        for (std::size_t j = 1; j < kKnots; ++j)
        {
            double const target = total * static_cast<double>(j) / kKnots;
            while (c + 1 < cells && cum[c + 1] <= target)
                ++c;
            double a = p.lo + c * w, b = a + w;
            double const left = a;
            double x = a + w * (target - cum[c]) / std::max(cum[c + 1] - cum[c], 1e-300);
            for (int it = 0; it < 50; ++it)
            {
                double const fx = cum[c] + cell_integral(left, x) - target;
                if (fx > 0)
                    b = x;
                else
                    a = x;
                double const d = dens(x);
                double next = d > 0 ? x - fx / d : 0.5 * (a + b);
                if (!(next > a && next < b))
                    next = 0.5 * (a + b);
                if (std::fabs(next - x) <= 1e-15 * std::max(1.0, x))
                {
                    x = next;
                    break;
                }
                x = next;
            }
            tab.q[j] = x;
        }
        for (std::size_t j = 0; j <= kKnots; ++j)
        {
            double const d = dens(tab.q[j]);
            tab.slope[j] = d > 0 ? total / d : std::nan("");
        }
        tables_.push_back(std::move(tab));
    }
    double total = 0;
    for (double m : piece_mass)
        total += m;
    cum_.push_back(0);
    for (double m : piece_mass)
        cum_.push_back(cum_.back() + m / total);
    cum_.back() = 1;
    mass_ = total * std::exp(s);
}

double ArrivalSampler::quantile(double p) const
{
    std::size_t i = 0;
    while (i + 2 < cum_.size() && p >= cum_[i + 1])
        ++i;
    double const width = cum_[i + 1] - cum_[i];
    double const u = std::clamp((p - cum_[i]) / width, 0.0, 1.0);
    auto const& tab = tables_[i];
    double const pos = u * kKnots;
    auto j = static_cast<std::size_t>(pos);
    if (j >= kKnots)
        return tab.hi;
    double const w = pos - static_cast<double>(j);
    double const q0 = tab.q[j], q1 = tab.q[j + 1];
    double const m0 = tab.slope[j], m1 = tab.slope[j + 1];
    if (!std::isfinite(m0) || !std::isfinite(m1))
        return q0 + w * (q1 - q0);
    double const du = 1.0 / kKnots;
    double const w2 = w * w, w3 = w2 * w;
    double const x = (2 * w3 - 3 * w2 + 1) * q0 + (w3 - 2 * w2 + w) * du * m0
                     + (-2 * w3 + 3 * w2) * q1 + (w3 - w2) * du * m1;
    return std::clamp(x, q0, q1);
}

SampleBatch sample_finite(LevyDensitySpec const& spec, double beta, std::size_t n,
                          std::uint64_t seed)
{
    ArrivalSampler const sampler(spec, beta);
    SampleBatch batch;
    batch.n = n;
    batch.seed = seed;
    batch.beta = beta;
    batch.spec_label = spec.label();
    batch.values.assign(n, 0.0);
    std::poisson_distribution<long> const proto(sampler.mass());
    for_draws(n, [&](std::size_t i) {
        Philox eng(seed, i);
        auto pois = proto;
        long const count = pois(eng);
        double sum = 0;
        for (long k = 0; k < count; ++k)
            sum += sampler.quantile(eng.uniform());
        batch.values[i] = sum;
    });
    return batch;
}

SampleBatch sample_dickman(std::size_t n, std::uint64_t seed, double tol)
{
    if (!(tol >= 1e-15 && tol <= 1e-6))
        throw DomainError("dickman truncation tol must lie in [1e-15, 1e-6]");
    SampleBatch batch;
    batch.n = n;
    batch.seed = seed;
    batch.spec_label = "dickman";
    batch.truncation_bias_bound = tol;
    batch.values.assign(n, 0.0);
    double const stop = -std::log(tol);
    for_draws(n, [&](std::size_t i) {
        Philox eng(seed, i);
        double s = 0, sum = 0;
        for (;;)
        {
            s -= std::log(eng.uniform());
            if (s > stop)
                break;
            sum += std::exp(-s);
        }
        // arrivals below tol have mean sum int_0^tol x dx/x = tol
        batch.values[i] = sum + tol;
    });
    return batch;
}

SampleBatch sample_split(LevyDensitySpec const& spec, double a, double beta, std::size_t n,
                         std::uint64_t seed, double tol)
{
    if (!(a > 0 && a < 1))
        throw DomainError("split point must lie in (0, 1)");
    if (!(tol > 0 && tol < a))
        throw DomainError("truncation tol must lie in (0, a)");
    double const L = spec.sup_xg();
    if (!std::isfinite(L))
        throw DominationError("x g(x) is unbounded, no dominating 1/x intensity");
    double const M = std::max(std::exp(beta * a), 1.0);
    double const rate = L * M;

    auto const upper = restrict_to_upper(spec, a);
    SampleBatch batch = sample_finite(upper, beta, n, seed);
    batch.spec_label = spec.label();
    batch.lower.assign(n, 0.0);

    // mean of the discarded arrivals below tol
    double comp = 0;
    for (auto const& p : spec.pieces())
    {
        double const lo = p.lo, hi = std::min(p.hi, tol);
        if (hi > lo)
            comp += integrate_adaptive([&](double x) { return p.xg(x) * std::exp(beta * x); }, lo, hi)
                        .value;
    }
    batch.truncation_bias_bound = comp;

    double const stop = std::log(a / tol);
    for_draws(n, [&](std::size_t i) {
        Philox eng(seed, i, kLowerStream);
        double s = 0, sum = 0;
        for (;;)
        {
            s -= std::log(eng.uniform()) / rate;
            if (s > stop)
                break;
            double const x = a * std::exp(-s);
            double const gx = x >= spec.support_lo() ? eval_g(spec, x) : 0.0;
            double const ratio = x * gx * std::exp(beta * x) / rate;
            if (ratio > 1 + 1e-12)
                throw DominationError("acceptance ratio " + std::to_string(ratio) + " at x = "
                                      + std::to_string(x));
            if (eng.uniform() < ratio)
                sum += x;
        }
        batch.lower[i] = sum + comp;
        batch.values[i] += batch.lower[i];
    });
    return batch;
}

CltDiagnostic clt_diagnostic(LevyDensitySpec const& spec, double beta, std::size_t n,
                             std::uint64_t seed)
{
    auto batch = sample_finite(spec, beta, n, seed);
    auto const t = cumulant_triple(spec, beta);
    double const sd = std::sqrt(t.c2);
    std::vector<double> z(batch.values.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = (batch.values[i] - t.c1) / sd;
    std::sort(z.begin(), z.end());
    CltDiagnostic d;
    d.n = n;
    d.ks_statistic = ks_one_sample(z, normal_cdf);
    d.mean_err = (batch.mean() - t.c1) / (sd / std::sqrt(static_cast<double>(n)));
    d.var_ratio = batch.variance() / t.c2;
    return d;
}

std::vector<GammaTailRow> gamma_tail_check(LevyDensitySpec const& spec, std::size_t n,
                                           std::uint64_t seed)
{
    if (spec.first_moment() > 1)
        throw PreconditionError("gamma tail bound needs E T <= 1, got "
                                + std::to_string(spec.first_moment()));
    SampleBatch batch = spec.finite_mass() ? sample_finite(spec, 0, n, seed)
                        : is_dickman(spec) ? sample_dickman(n, seed)
                                           : sample_split(spec, 0.25, 0, n, seed);
    std::vector<GammaTailRow> rows;
    double const nn = static_cast<double>(n);
    for (double t : {1.0, 1.5, 2.0, 3.0})
    {
        std::size_t hits = 0;
        for (double v : batch.values)
            hits += v >= t;
        GammaTailRow r;
        r.t = t;
        r.empirical = static_cast<double>(hits) / nn;
        r.bound = 1 / std::tgamma(1 + t);
        double const p = std::max(r.empirical, 1 / nn);
        r.std_error = std::sqrt(p * (1 - p) / nn);
        r.respected = r.empirical <= r.bound + 3 * r.std_error;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace levy
