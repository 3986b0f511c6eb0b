#include "modsplit/csv.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace modsplit {
namespace {

double parse_real(const std::string& cell, std::size_t line) {
  double x = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, x);
  if (ec != std::errc() || ptr != end) {
    if (cell == "nan") return std::nan("");
    throw ConfigError(fmt::format("csv line {}: '{}' is not a number", line, cell));
  }
  return x;
}

long parse_integer(const std::string& cell, std::size_t line) {
  long x = 0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, x);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(fmt::format("csv line {}: '{}' is not an integer", line, cell));
  return x;
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.17g}", x);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void write_run_csv(std::ostream& os, const RunRecord& record, const RunCsvOptions& options) {
  record.validate();
  const std::size_t dim = record.states.empty() ? 0 : record.states.front().dim();
  const std::size_t cols = options.full_state ? dim : std::min(dim, options.coordinate_cap);
  const double scale = std::pow(options.tau, options.order);

  os << "step,time,H,dH_scaled,push_iters";
  for (std::size_t i = 0; i < cols; ++i) os << ",q_" << i << ",p_" << i;
  os << '\n';
  for (std::size_t r = 0; r < record.size(); ++r) {
    const auto step = std::lround(record.times[r] / options.tau);
    os << step << ',' << format_real(record.times[r]) << ',' << format_real(record.energies[r]) << ','
       << format_real((record.energies[r] - options.h0) / scale) << ',' << record.push_iterations[r];
    const auto& s = record.states[r];
    for (std::size_t i = 0; i < cols; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      os << ',' << format_real(s.q()[k]) << ',' << format_real(s.p()[k]);
    }
    os << '\n';
  }
}

void write_run_csv(const std::string& path, const RunRecord& record, const RunCsvOptions& options) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  write_run_csv(os, record, options);
  if (!os) throw ConfigError("failed writing " + path);
}

RunRecord read_run_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("csv: empty input");
  const auto header = split_csv_line(line);
  const std::vector<std::string> fixed{"step", "time", "H", "dH_scaled", "push_iters"};
  if (header.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), header.begin()))
    throw ConfigError("csv: header must start with step,time,H,dH_scaled,push_iters");
  const std::size_t extra = header.size() - fixed.size();
  if (extra % 2 != 0) throw ConfigError("csv: coordinate columns must come in q_i,p_i pairs");
  const std::size_t dim = extra / 2;
  for (std::size_t i = 0; i < dim; ++i)
    if (header[5 + 2 * i] != "q_" + std::to_string(i) || header[6 + 2 * i] != "p_" + std::to_string(i))
      throw ConfigError("csv: unexpected coordinate column " + header[5 + 2 * i]);

  RunRecord rec;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ConfigError(fmt::format("csv line {}: expected {} cells, got {}", lineno, header.size(), cells.size()));
    rec.times.push_back(parse_real(cells[1], lineno));
    rec.energies.push_back(parse_real(cells[2], lineno));
    rec.push_iterations.push_back(static_cast<int>(parse_integer(cells[4], lineno)));
    if (dim == 0) throw ConfigError("csv: no coordinate columns, cannot rebuild states");
    Vector q(static_cast<Eigen::Index>(dim)), p(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      q[static_cast<Eigen::Index>(i)] = parse_real(cells[5 + 2 * i], lineno);
      p[static_cast<Eigen::Index>(i)] = parse_real(cells[6 + 2 * i], lineno);
    }
    rec.states.emplace_back(std::move(q), std::move(p));
  }
  rec.validate();
  return rec;
}

RunRecord read_run_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  return read_run_csv(is);
}

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  const auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  if (!os) throw ConfigError("failed writing " + path);
}

}  // namespace modsplit
