#pragma once

// CSV emission and reading for run records and summary tables.
// Floats are written with 17 significant digits so doubles round-trip.

#include "modsplit/diagnostics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace modsplit {

std::string format_real(double x);

struct RunCsvOptions {
  double h0 = 0.0;
  double tau = 1.0;
  int order = 2;
  /// Coordinates beyond this many get no q_i/p_i columns unless full_state.
  std::size_t coordinate_cap = 32;
  bool full_state = false;
};

/// Header `step,time,H,dH_scaled,push_iters` followed by q_i,p_i pairs.
void write_run_csv(std::ostream& os, const RunRecord& record, const RunCsvOptions& options);
void write_run_csv(const std::string& path, const RunRecord& record, const RunCsvOptions& options);

/// Rebuilds a record from a run CSV. States hold the coordinates that were written.
RunRecord read_run_csv(std::istream& is);
RunRecord read_run_csv(const std::string& path);

/// Plain table with one header line; cells are written verbatim.
void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace modsplit
