#pragma once

// Minimal self-contained SVG line charts for eyeballing sweep summaries.

#include <string>
#include <vector>

namespace modsplit {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

/// Non-finite points, and non-positive ones on log axes, are skipped.
std::string line_chart(const std::vector<Series>& series, const ChartOptions& options);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace modsplit
