#pragma once

// Observables over integrated trajectories: energy error, global error against
// a reference, oscillation period, convergence slopes and the optimal-order
// estimate.

#include "modsplit/schemes.hpp"

#include <utility>
#include <vector>

namespace modsplit {

enum class Precision { standard, extended };

struct RunRecord {
  std::vector<double> times;
  std::vector<PhaseState> states;
  /// Filled only for runs carried in ExtReal; states then holds the rounded copies.
  std::vector<ExtendedState> extended_states;
  std::vector<double> energies;
  std::vector<int> push_iterations;
  bool is_reference = false;

  std::size_t size() const noexcept { return times.size(); }
  /// Throws ConfigError unless all columns have equal length and times increase.
  void validate() const;
};

/// Integrates n_steps and keeps every `stride`-th state, including the initial one.
/// push_iterations holds the largest push count since the previous sample.
RunRecord record_run(const HamiltonianModel& model, const PhaseState& state0, const SchemeConfig& config,
                     long n_steps, long stride = 1, Precision precision = Precision::standard);

/// (H(t) - H0) / tau^order, entrywise.
std::vector<double> scaled_energy_error(const RunRecord& record, double h0, double tau, int order);

/// Euclidean phase-space distance to the reference at each sample time of
/// `record`. Every sample time must also occur in the reference. Differences
/// are taken in ExtReal when both records carry extended states.
std::vector<double> global_error(const RunRecord& record, const RunRecord& reference);

/// Mean period from successive same-direction zero crossings of q[0], each
/// located on the cubic through the four bracketing samples.
double period_estimate(const RunRecord& record);

/// Least-squares slope of log(err) against log(tau).
double convergence_order(const std::vector<std::pair<double, double>>& errors_by_tau);

/// sqrt(2 (digits + log10 t - 2)), the cost-optimal scheme order for a target
/// accuracy of 10^-digits at time t.
double optimal_order(double digits, double t);

struct ReferenceSettings {
  double tau_ref = 5e-4;
  int order = 8;
  Precision precision = Precision::standard;
};

/// Order-8 tiny-step run sampled every sample_dt; sample_dt and t_end must be
/// integer multiples of tau_ref.
RunRecord reference_trajectory(const HamiltonianModel& model, const PhaseState& state0, double t_end,
                               double sample_dt, const ReferenceSettings& settings = {});

struct LinearFit {
  double slope;
  double intercept;
  /// RMS of the fit residual divided by the RMS of the data.
  double relative_residual;
};

/// y ~ slope * t (intercept fixed at 0) over samples with t in [t_min, t_max].
LinearFit fit_through_origin(const std::vector<double>& t, const std::vector<double>& y, double t_min, double t_max);

}  // namespace modsplit
