#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levy/density_model.hpp"

namespace levy
{

enum class OracleChoice
{
    volterra,
    fourier,
    automatic
};

OracleChoice parse_oracle(std::string const& name);

struct ComparisonRow
{
    double u{0};
    double beta{0};
    double f_asym{0};
    double f_oracle{0};
    double rel_err{0};
    double scaled_err{0};  //!< rel_err * u, or rel_err * sqrt(u) for the 1/x class
    double tail_asym{0};
    double tail_oracle{0};
    double tail_rel_err{0};
    double oracle_err{0};  //!< oracle density error bound
    std::string note;      //!< empty unless the row failed

    bool ok() const { return note.empty(); }
};

struct CompareOptions
{
    OracleChoice oracle{OracleChoice::automatic};
    double h{1.0 / 4096};
    std::optional<double> t_max;  //!< default: max u + 16 sigma
};

// One row per u; failures become NaN rows with a note
std::vector<ComparisonRow> compare(LevyDensitySpec const& spec, std::span<double const> u_list,
                                   CompareOptions const& opts = {});

void write_comparison_csv(std::ostream& os, std::vector<ComparisonRow> const& rows);

}  // namespace levy
