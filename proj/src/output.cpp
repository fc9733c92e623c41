#include "epspy/output.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "epspy/errors.hpp"

namespace epspy {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParameterError("malformed number '" + std::string(text) + "'");
  }
  return x;
}

namespace {

constexpr const char* kStats[] = {"mean", "q25", "median", "q75"};

double stat(const SampleSummary& s, int which) {
  switch (which) {
    case 0:
      return s.mean;
    case 1:
      return s.q25;
    case 2:
      return s.median;
    default:
      return s.q75;
  }
}

void set_stat(SampleSummary& s, int which, double v) {
  switch (which) {
    case 0:
      s.mean = v;
      break;
    case 1:
      s.q25 = v;
      break;
    case 2:
      s.median = v;
      break;
    default:
      s.q75 = v;
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string summary_csv_header(const SummaryRow& layout) {
  std::string h = "alpha,theta,epsilon";
  for (const auto& d : layout.distances) h += ",dK_" + d.label;
  for (int k = 0; k < 4; ++k) {
    for (const auto& s : layout.samples) h += std::string(",") + kStats[k] + "_" + s.label;
  }
  return h;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  if (rows.empty()) return;
  out << summary_csv_header(rows.front()) << '\n';
  for (const auto& r : rows) {
    out << format_double(r.alpha) << ',' << format_double(r.theta) << ','
        << format_double(r.epsilon);
    for (const auto& d : r.distances) out << ',' << format_double(d.value);
    for (int k = 0; k < 4; ++k) {
      for (const auto& s : r.samples) out << ',' << format_double(stat(s, k));
    }
    out << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto header = split_csv(line);
  if (header.size() < 3 || header[0] != "alpha" || header[1] != "theta" ||
      header[2] != "epsilon") {
    throw ParameterError("summary CSV header must start with alpha,theta,epsilon");
  }
  SummaryRow layout;
  std::size_t col = 3;
  for (; col < header.size() && header[col].rfind("dK_", 0) == 0; ++col) {
    layout.distances.push_back({header[col].substr(3), 0.0});
  }
  const std::size_t stat_cols = header.size() - col;
  if (stat_cols % 4 != 0) throw ParameterError("summary CSV has a ragged statistics block");
  for (std::size_t i = 0; i < stat_cols / 4; ++i) {
    const std::string& name = header[col + i];
    const auto us = name.find('_');
    if (us == std::string::npos || name.substr(0, us) != "mean") {
      throw ParameterError("unexpected summary CSV column '" + name + "'");
    }
    layout.samples.push_back({name.substr(us + 1)});
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) throw ParameterError("summary CSV row has wrong width");
    SummaryRow r = layout;
    r.alpha = parse_double(fields[0]);
    r.theta = parse_double(fields[1]);
    r.epsilon = parse_double(fields[2]);
    std::size_t f = 3;
    for (auto& d : r.distances) d.value = parse_double(fields[f++]);
    for (int k = 0; k < 4; ++k) {
      for (auto& s : r.samples) set_stat(s, k, parse_double(fields[f++]));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_json(std::ostream& out, const std::vector<SummaryRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"alpha", r.alpha}, {"theta", r.theta}, {"epsilon", r.epsilon}};
    for (const auto& d : r.distances) row["dK"][d.label] = d.value;
    for (const auto& s : r.samples) {
      row["columns"][s.label] = {
          {"mean", s.mean}, {"q25", s.q25}, {"median", s.median}, {"q75", s.q75}};
    }
    j.push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

void write_realization_csv(std::ostream& out, const std::vector<EpsilonPYRealization>& draws) {
  out << "index,weight,atom\n";
  for (const auto& r : draws) {
    for (std::size_t i = 0; i < r.tau(); ++i) {
      out << (i + 1) << ',' << format_double(r.weights[i]) << ',' << format_double(r.atoms[i])
          << '\n';
    }
    out << "-1," << format_double(r.remainder) << ',' << format_double(r.extra_atom) << '\n';
  }
}

void write_realization_json(std::ostream& out, const std::vector<EpsilonPYRealization>& draws) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : draws) {
    j.push_back({{"tau", r.tau()},
                 {"exact", r.exact},
                 {"weights", r.weights},
                 {"atoms", r.atoms},
                 {"remainder", r.remainder},
                 {"extra_atom", r.extra_atom}});
  }
  out << j.dump(2) << '\n';
}

void write_density_csv(std::ostream& out, const std::vector<DensityRow>& rows) {
  out << "series,alpha,theta,epsilon,x_lo,x_hi,density\n";
  for (const auto& r : rows) {
    out << r.series << ',' << format_double(r.alpha) << ',' << format_double(r.theta) << ','
        << format_double(r.epsilon) << ',' << format_double(r.x_lo) << ','
        << format_double(r.x_hi) << ',' << format_double(r.density) << '\n';
  }
}

void write_density_json(std::ostream& out, const std::vector<DensityRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    j.push_back({{"series", r.series},
                 {"alpha", r.alpha},
                 {"theta", r.theta},
                 {"epsilon", r.epsilon},
                 {"x_lo", r.x_lo},
                 {"x_hi", r.x_hi},
                 {"density", r.density}});
  }
  out << j.dump(2) << '\n';
}

void write_values_csv(std::ostream& out, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

void write_values_json(std::ostream& out, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    for (std::size_t c = 0; c < columns.size() && c < row.size(); ++c) obj[columns[c]] = row[c];
    j.push_back(std::move(obj));
  }
  out << j.dump(2) << '\n';
}

}  // namespace epspy
