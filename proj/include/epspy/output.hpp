#pragma once

// CSV / JSON writers. Floats are written in shortest round-trip form.

#include <iosfwd>
#include <string>
#include <vector>

#include "epspy/epsilon_py.hpp"
#include "epspy/experiments.hpp"
#include "epspy/stats.hpp"

namespace epspy {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);
/// Inverse of format_double; throws ParameterError on malformed input.
double parse_double(std::string_view text);

/// Header: alpha,theta,epsilon,dK_<d>...,mean_<s>...,q25_<s>...,median_<s>...,q75_<s>...
/// Column layout is taken from the first row.
std::string summary_csv_header(const SummaryRow& layout);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_summary_json(std::ostream& out, const std::vector<SummaryRow>& rows);
/// Parse CSV written by write_summary_csv.
std::vector<SummaryRow> read_summary_csv(std::istream& in);

/// One row per atom (index, weight, atom), closed by (-1, remainder, extra_atom).
void write_realization_csv(std::ostream& out, const std::vector<EpsilonPYRealization>& draws);
void write_realization_json(std::ostream& out, const std::vector<EpsilonPYRealization>& draws);

void write_density_csv(std::ostream& out, const std::vector<DensityRow>& rows);
void write_density_json(std::ostream& out, const std::vector<DensityRow>& rows);

/// Single named column of values.
void write_values_csv(std::ostream& out, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);
void write_values_json(std::ostream& out, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows);

}  // namespace epspy
