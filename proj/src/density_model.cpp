#include "levy/density_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "levy/error.hpp"

namespace levy
{
namespace
{

constexpr int kScanCells = 256;

double horner(std::vector<double> const& c, double x)
{
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * x + *it;
    return r;
}

double horner_derivative(std::vector<double> const& c, double x)
{
    double r = 0;
    for (std::size_t k = c.size(); k-- > 1;)
        r = r * x + static_cast<double>(k) * c[k];
    return r;
}

std::string fmt_num(double v)
{
    char buf[40];
    auto const res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

//! Extremum of f on [l, r]: endpoints, a uniform scan, and bisected roots of
//! f' between scan points.
double extremum(std::function<double(double)> const& f,
                std::function<double(double)> const& df,
                double l,
                double r,
                bool want_min)
{
    auto better = [want_min](double a, double b) {
        return want_min ? std::min(a, b) : std::max(a, b);
    };
    double best = better(f(l), f(r));
    double const dx = (r - l) / kScanCells;
    double x_prev = l;
    double d_prev = df(l);
    for (int i = 1; i <= kScanCells; ++i)
    {
        double const x = (i == kScanCells) ? r : l + i * dx;
        double const d = df(x);
        best = better(best, f(x));
        if ((d_prev < 0) != (d < 0) && std::isfinite(d_prev) && std::isfinite(d))
        {
            double a = x_prev, b = x, da = d_prev;
            for (int it = 0; it < 100 && b - a > 1e-15 * std::max(1.0, b); ++it)
            {
                double const m = 0.5 * (a + b);
                double const dm = df(m);
                if ((dm < 0) == (da < 0))
                {
                    a = m;
                    da = dm;
                }
                else
                {
                    b = m;
                }
            }
            best = better(best, f(0.5 * (a + b)));
        }
        x_prev = x;
        d_prev = d;
    }
    return best;
}

double piece_min(DensityPiece const& p, double l, double r)
{
    // Stay off the pole of a singular piece; g -> +inf there anyway.
    if (p.singular() && l == 0)
        l = std::min(1e-12, 0.5 * r);
    return extremum([&p](double x) { return p(x); },
                    [&p](double x) { return p.derivative(x); },
                    l,
                    r,
                    true);
}

double piece_sup_xg(DensityPiece const& p)
{
    return extremum([&p](double x) { return p.xg(x); },
                    [&p](double x) { return p.xg_derivative(x); },
                    p.lo,
                    p.hi,
                    false);
}

double piece_mass(DensityPiece const& p)
{
    if (p.singular())
        return std::numeric_limits<double>::infinity();
    double m = 0;
    if (p.inv_coeff > 0)
        m += p.inv_coeff * std::log(p.hi / p.lo);
    for (std::size_t k = 0; k < p.poly.size(); ++k)
    {
        double const e = static_cast<double>(k + 1);
        m += p.poly[k] * (std::pow(p.hi, e) - std::pow(p.lo, e)) / e;
    }
    return m;
}

double piece_first_moment(DensityPiece const& p)
{
    double m = p.inv_coeff * (p.hi - p.lo);
    for (std::size_t k = 0; k < p.poly.size(); ++k)
    {
        double const e = static_cast<double>(k + 2);
        m += p.poly[k] * (std::pow(p.hi, e) - std::pow(p.lo, e)) / e;
    }
    return m;
}

double min_g_on(std::vector<DensityPiece> const& pieces, double l, double r)
{
    if (l < pieces.front().lo)
        return 0;
    double best = std::numeric_limits<double>::infinity();
    for (auto const& p : pieces)
    {
        double const a = std::max(l, p.lo);
        double const b = std::min(r, p.hi);
        if (a < b)
            best = std::min(best, piece_min(p, a, b));
    }
    return best;
}

EpsFloor find_eps_floor(std::vector<DensityPiece> const& pieces)
{
    for (int k = 2; k <= 20; ++k)
    {
        double const eps = std::ldexp(1.0, -k);
        if (min_g_on(pieces, 1 - eps, 1) >= eps)
            return {eps, true};
    }
    return {0, false};
}

}  // namespace

//---------------------------------------------------------------------------//
// DensityPiece
//---------------------------------------------------------------------------//

double DensityPiece::operator()(double x) const
{
    double v = horner(poly, x);
    if (inv_coeff != 0)
        v += inv_coeff / x;
    return v;
}

double DensityPiece::derivative(double x) const
{
    double v = horner_derivative(poly, x);
    if (inv_coeff != 0)
        v -= inv_coeff / (x * x);
    return v;
}

double DensityPiece::xg(double x) const
{
    return inv_coeff + x * horner(poly, x);
}

double DensityPiece::xg_derivative(double x) const
{
    return horner(poly, x) + x * horner_derivative(poly, x);
}

double LevyDensitySpec::singular_coeff() const
{
    auto const& p = pieces_.front();
    return p.singular() ? p.inv_coeff : 0.0;
}

//---------------------------------------------------------------------------//
// Construction and validation
//---------------------------------------------------------------------------//

LevyDensitySpec make_spec(std::vector<DensityPiece> pieces, std::string label)
{
    if (pieces.empty())
        throw InvariantError("no pieces");

    for (std::size_t j = 0; j < pieces.size(); ++j)
    {
        auto& p = pieces[j];
        std::string const where = "piece " + std::to_string(j) + ": ";
        if (!std::isfinite(p.lo) || !std::isfinite(p.hi)
            || !std::isfinite(p.inv_coeff))
            throw InvariantError(where + "non-finite field");
        for (double c : p.poly)
            if (!std::isfinite(c))
                throw InvariantError(where + "non-finite polynomial coefficient");
        if (!(p.lo >= 0 && p.lo < 1))
            throw InvariantError(where + "lo must lie in [0,1)");
        if (!(p.hi > 0 && p.hi <= 1 + 1e-12))
            throw InvariantError(where + "hi must lie in (0,1]");
        if (!(p.lo < p.hi))
            throw InvariantError(where + "lo < hi violated");
        if (p.inv_coeff < 0)
            throw InvariantError(where + "inv_coeff must be nonnegative");
        if (j > 0 && pieces[j - 1].hi != p.lo)
            throw InvariantError(where
                                 + "pieces not contiguous (gap or overlap at "
                                 + fmt_num(p.lo) + ")");
        // Trailing zero coefficients carry no information
        while (!p.poly.empty() && p.poly.back() == 0)
            p.poly.pop_back();
    }
    if (std::fabs(pieces.back().hi - 1) > 1e-12)
        throw InvariantError("hi of last piece must equal 1");
    pieces.back().hi = 1;

    for (std::size_t j = 0; j < pieces.size(); ++j)
    {
        auto const& p = pieces[j];
        // Scale for the tolerance: g at the right end of the piece
        double const scale = std::max(1.0, std::fabs(p(p.hi)));
        if (piece_min(p, p.lo, p.hi) < -1e-12 * scale)
            throw InvariantError("piece " + std::to_string(j)
                                 + ": negative density");
    }

    LevyDensitySpec spec;
    spec.pieces_ = std::move(pieces);
    spec.label_ = std::move(label);

    double mass = 0, moment = 0, sup_xg = 0;
    for (auto const& p : spec.pieces_)
    {
        mass += piece_mass(p);
        moment += piece_first_moment(p);
        sup_xg = std::max(sup_xg, piece_sup_xg(p));
    }
    if (!(moment > 0) || !std::isfinite(moment))
        throw InvariantError("first moment int x g(x) dx must lie in (0,inf)");
    if (!std::isfinite(mass) && !std::isfinite(sup_xg))
        throw InvariantError("infinite mass requires sup x g(x) < inf");

    spec.mass_ = mass;
    spec.first_moment_ = moment;
    spec.sup_xg_ = sup_xg;

    spec.eps_floor_ = find_eps_floor(spec.pieces_);
    if (!spec.eps_floor_.verified)
        throw InvariantError(
            "no eps in {2^-2..2^-20} with g >= eps on [1-eps,1]");

    auto& cls = spec.class_;
    if (std::isfinite(mass))
    {
        cls.kind = MassKind::finite;
        cls.theorem = Theorem::thm1;
        cls.atom_mass_at_beta0 = std::exp(-mass);
    }
    else
    {
        cls.kind = MassKind::infinite;
        cls.atom_mass_at_beta0 = 0;
        double const c = spec.pieces_.front().inv_coeff;
        if (c >= 1)
        {
            cls.theorem = Theorem::thm2;
        }
        else
        {
            cls.theorem = Theorem::rejected;
            cls.diagnostic = "g ~ " + fmt_num(c)
                             + "/x at 0 with coefficient < 1: the density of "
                               "T behaves like x^(c-1) near 0, so it is "
                               "unbounded and stays unbounded after any tilt; "
                               "no uniform local limit";
        }
    }
    return spec;
}

//---------------------------------------------------------------------------//
// JSON
//---------------------------------------------------------------------------//

LevyDensitySpec parse_spec(std::string_view document)
{
    using nlohmann::json;
    json doc;
    try
    {
        doc = json::parse(document.begin(), document.end());
    }
    catch (json::parse_error const& e)
    {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("pieces") || !doc["pieces"].is_array())
        throw SchemaError("document must be an object with a 'pieces' array");

    auto number = [](json const& obj, char const* key, std::size_t j) {
        if (!obj.contains(key) || !obj[key].is_number())
            throw SchemaError("piece " + std::to_string(j) + ": field '" + key
                              + "' must be a number");
        return obj[key].get<double>();
    };

    std::vector<DensityPiece> pieces;
    auto const& arr = doc["pieces"];
    for (std::size_t j = 0; j < arr.size(); ++j)
    {
        auto const& obj = arr[j];
        if (!obj.is_object())
            throw SchemaError("piece " + std::to_string(j) + " is not an object");
        DensityPiece p;
        p.lo = number(obj, "lo", j);
        p.hi = number(obj, "hi", j);
        p.inv_coeff = number(obj, "inv_coeff", j);
        if (!obj.contains("poly") || !obj["poly"].is_array())
            throw SchemaError("piece " + std::to_string(j)
                              + ": field 'poly' must be an array");
        for (auto const& c : obj["poly"])
        {
            if (!c.is_number())
                throw SchemaError("piece " + std::to_string(j)
                                  + ": poly entries must be numbers");
            p.poly.push_back(c.get<double>());
        }
        pieces.push_back(std::move(p));
    }

    std::string label;
    if (doc.contains("label"))
    {
        if (!doc["label"].is_string())
            throw SchemaError("'label' must be a string");
        label = doc["label"].get<std::string>();
    }
    return make_spec(std::move(pieces), std::move(label));
}

LevyDensitySpec parse_spec_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot read spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::string serialize(LevyDensitySpec const& spec)
{
    std::ostringstream os;
    os << "{\"pieces\":[";
    for (std::size_t j = 0; j < spec.pieces().size(); ++j)
    {
        auto const& p = spec.pieces()[j];
        if (j)
            os << ',';
        os << "{\"lo\":" << fmt_num(p.lo) << ",\"hi\":" << fmt_num(p.hi)
           << ",\"inv_coeff\":" << fmt_num(p.inv_coeff) << ",\"poly\":[";
        for (std::size_t k = 0; k < p.poly.size(); ++k)
            os << (k ? "," : "") << fmt_num(p.poly[k]);
        os << "]}";
    }
    os << "]";
    if (!spec.label().empty())
        os << ",\"label\":" << nlohmann::json(spec.label()).dump();
    os << "}";
    return os.str();
}

//---------------------------------------------------------------------------//

double eval_g(LevyDensitySpec const& spec, double x)
{
    if (!(x > 0 && x <= 1))
        throw DomainError("eval_g: x=" + fmt_num(x) + " outside (0,1]");
    auto const& pieces = spec.pieces();
    if (x < pieces.front().lo)
        return 0;
    // Last piece with lo <= x gives the right limit at breakpoints
    auto it = std::upper_bound(
        pieces.begin(), pieces.end(), x, [](double v, DensityPiece const& p) {
            return v < p.lo;
        });
    return (*std::prev(it))(x);
}

LevyDensitySpec builtin_dickman()
{
    return make_spec({DensityPiece{0, 1, 1, {}}}, "dickman");
}

LevyDensitySpec builtin_truncated(double a)
{
    if (!(a > 0 && a < 1))
        throw DomainError("truncated(a) requires a in (0,1)");
    return make_spec({DensityPiece{a, 1, 1, {}}}, "truncated(" + fmt_num(a) + ")");
}

LevyDensitySpec builtin_uniform(double a)
{
    if (!(a >= 0 && a < 1))
        throw DomainError("uniform(a) requires a in [0,1)");
    return make_spec({DensityPiece{a, 1, 0, {1.0}}}, "uniform(" + fmt_num(a) + ")");
}

LevyDensitySpec builtin(std::string_view name)
{
    if (name == "dickman")
        return builtin_dickman();
    auto const colon = name.find(':');
    if (colon != std::string_view::npos)
    {
        auto const head = name.substr(0, colon);
        double a = 0;
        try
        {
            a = std::stod(std::string(name.substr(colon + 1)));
        }
        catch (std::exception const&)
        {
            throw SchemaError("bad builtin parameter in '" + std::string(name) + "'");
        }
        if (head == "truncated")
            return builtin_truncated(a);
        if (head == "uniform")
            return builtin_uniform(a);
    }
    throw SchemaError("unknown builtin '" + std::string(name) + "'");
}

LevyDensitySpec restrict_to_upper(LevyDensitySpec const& spec, double a)
{
    if (!(a >= 0 && a < 1))
        throw DomainError("restriction point must lie in [0,1)");
    if (a <= spec.support_lo())
        return spec;
    std::vector<DensityPiece> out;
    for (auto p : spec.pieces())
    {
        if (p.hi <= a)
            continue;
        p.lo = std::max(p.lo, a);
        out.push_back(std::move(p));
    }
    return make_spec(std::move(out), spec.label() + "|[" + fmt_num(a) + ",1]");
}

bool is_dickman(LevyDensitySpec const& spec)
{
    auto const& ps = spec.pieces();
    return ps.size() == 1 && ps[0].lo == 0 && ps[0].hi == 1
           && ps[0].inv_coeff == 1 && ps[0].poly.empty();
}

std::uint64_t spec_hash(LevyDensitySpec const& spec)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize(spec))
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

char const* to_string(Theorem t)
{
    switch (t)
    {
        case Theorem::thm1:
            return "thm1";
        case Theorem::thm2:
            return "thm2";
        case Theorem::rejected:
            return "rejected";
    }
    return "?";
}

}  // namespace levy
