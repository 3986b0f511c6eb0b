#pragma once

// Experiment configuration: a flat key = value file in TOML syntax (strings,
// numbers, booleans and arrays of numbers; no tables). Unknown keys are errors.

#include "modsplit/diagnostics.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace modsplit {

using ConfigValue = std::variant<bool, double, std::string, std::vector<double>>;

/// Parses the flat TOML subset. Throws ConfigError with the offending line.
std::map<std::string, ConfigValue> parse_flat_toml(std::string_view text);

struct ModelSpec {
  /// harmonic, quadratic, quartic or fpu.
  std::string name = "quartic";
  std::size_t d = 9;
  double alpha = 0.0;
  double beta = 1.0;
  double omega2 = 0.0;
  bool periodic = false;
  /// Initial energy and Fourier mode of the fpu initial state.
  double energy = 1.425;
  int mode = 1;
  /// Row-major stiffness and diagonal inverse masses of the quadratic model.
  std::vector<double> stiffness;
  std::vector<double> mass_diag;
};

struct ExperimentConfig {
  ModelSpec model;
  int order = 2;
  double tau = 0.1;
  long steps = 1000;
  long sample_stride = 1;
  std::string output = "out";
  std::uint64_t seed = 0;
  bool full_state = false;
  double push_tol = 1e-14;
  int push_max_iter = 25;
  Precision precision = Precision::standard;
  /// Horizon of sweeps and the fpu experiment.
  double t_end = 10.0;
  /// Spacing of global-error samples in the fpu experiment.
  double sample_dt = 0.25;
  std::vector<double> taus;
  std::vector<int> orders;
  std::vector<long> d_list;
  std::vector<double> q0;
  std::vector<double> p0;
  ReferenceSettings reference;

  SchemeConfig scheme() const;
  /// Throws ConfigError on any out-of-range field.
  void validate() const;
};

/// Applies the keys of `text` on top of `base`.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

std::unique_ptr<HamiltonianModel> build_model(const ModelSpec& spec);

/// q0/p0 when given, else (0, 1) in one dimension, the fpu initial state, or
/// q = 0, p = e_0 for the quadratic model.
PhaseState initial_state(const ExperimentConfig& config, const HamiltonianModel& model);

}  // namespace modsplit
