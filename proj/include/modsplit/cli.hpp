#pragma once

// Experiment commands behind the `modsplit` executable. Each returns a process
// exit code: 0 ok, 2 configuration error, 3 numerical failure.

#include "modsplit/config.hpp"

#include <functional>
#include <iosfwd>
#include <string>

namespace modsplit {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numerical = 3;

/// Runs `body`, mapping ConfigError to 2 and NumericalError to 3 with a message on `err`.
int guarded(const std::function<void()>& body, std::ostream& err);

/// Integrates one trajectory and writes <output>/run.csv.
int cmd_run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Cross product of orders x taus up to t_end: per-run CSVs, summary.csv
/// (order,tau,max_abs_dH,eps_at_tend,fitted_slope) and one SVG per metric.
int cmd_order_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Global error against an order-8 reference on the FPU chain: per-run
/// error-vs-time CSVs, fpu_summary.csv with slopes and linear-growth fits.
int cmd_fpu(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Wall-clock timing of FPU integration per (d, order); writes bench.csv.
int cmd_bench(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Summarises a run CSV: energy error, push counts and, in one dimension, the period.
int cmd_report(const ExperimentConfig& config, const std::string& csv_path, std::ostream& out, std::ostream& err);

}  // namespace modsplit
