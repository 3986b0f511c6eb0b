#include "modsplit/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace modsplit {
namespace {

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

long integer_ratio(double numerator, double denominator, const char* what) {
  const double r = numerator / denominator;
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-6) throw ConfigError(std::string(what) + " must be an integer multiple of the reference step");
  return static_cast<long>(n);
}

/// Root in [lo, hi] of the cubic through four points, given a sign change there.
double cubic_root(const std::array<double, 4>& x, const std::array<double, 4>& y, double lo, double hi, double flo,
                  double fhi) {
  const auto poly = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      double l = 1.0;
      for (std::size_t j = 0; j < 4; ++j)
        if (j != i) l *= (t - x[j]) / (x[i] - x[j]);
      s += y[i] * l;
    }
    return s;
  };
  if (fhi == 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = poly(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void RunRecord::validate() const {
  if (!extended_states.empty() && extended_states.size() != times.size())
    throw ConfigError("run record: column lengths differ");
  if (states.size() != times.size() || energies.size() != times.size() || push_iterations.size() != times.size())
    throw ConfigError("run record: column lengths differ");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ConfigError("run record: times must increase strictly");
}

RunRecord record_run(const HamiltonianModel& model, const PhaseState& state0, const SchemeConfig& config,
                     long n_steps, long stride, Precision precision) {
  if (stride < 1) throw ConfigError("sample stride must be positive");
  config.validate();
  RunRecord rec;
  const auto keep = [&](double t, const PhaseState& s, int iters) {
    rec.times.push_back(t);
    rec.energies.push_back(model.hamiltonian(s));
    rec.push_iterations.push_back(iters);
    rec.states.push_back(s);
  };
  keep(0.0, state0, 0);
  int window_max = 0;
  if (precision == Precision::standard) {
    integrate(state0, model, config, n_steps, [&](long i, const PhaseState& s, const PushReport& r) {
      window_max = std::max(window_max, r.iterations);
      if (i % stride != 0) return;
      keep(static_cast<double>(i) * config.tau, s, window_max);
      window_max = 0;
    });
  } else {
    rec.extended_states.emplace_back(state0);
    integrate_extended(ExtendedState(state0), model, config, n_steps,
                       [&](long i, const ExtendedState& s, const PushReport& r) {
                         window_max = std::max(window_max, r.iterations);
                         if (i % stride != 0) return;
                         keep(static_cast<double>(i) * config.tau, s.rounded(), window_max);
                         rec.extended_states.push_back(s);
                         window_max = 0;
                       });
  }
  return rec;
}

std::vector<double> scaled_energy_error(const RunRecord& record, double h0, double tau, int order) {
  const double scale = std::pow(tau, order);
  std::vector<double> out;
  out.reserve(record.energies.size());
  for (double h : record.energies) out.push_back((h - h0) / scale);
  return out;
}

std::vector<double> global_error(const RunRecord& record, const RunRecord& reference) {
  const bool wide = record.extended_states.size() == record.size() &&
                    reference.extended_states.size() == reference.size() && record.size() > 0;
  std::vector<double> out;
  out.reserve(record.size());
  for (std::size_t i = 0; i < record.size(); ++i) {
    const double t = record.times[i];
    auto it = std::lower_bound(reference.times.begin(), reference.times.end(), t - 1e-9 * std::max(1.0, std::abs(t)));
    if (it == reference.times.end() || !same_time(*it, t))
      throw ConfigError("global error: sample time " + std::to_string(t) + " is missing from the reference");
    const auto j = static_cast<std::size_t>(it - reference.times.begin());
    if (wide) {
      out.push_back(distance(record.extended_states[i], reference.extended_states[j]));
      continue;
    }
    const auto& ref = reference.states[j];
    const auto& s = record.states[i];
    if (ref.dim() != s.dim()) throw ConfigError("global error: state dimensions differ");
    out.push_back(std::sqrt((s.q() - ref.q()).squaredNorm() + (s.p() - ref.p()).squaredNorm()));
  }
  return out;
}

double period_estimate(const RunRecord& record) {
  const std::size_t n = record.size();
  std::vector<double> up, down;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = record.states[i].q()[0];
    const double b = record.states[i + 1].q()[0];
    const bool rising = a < 0.0 && b >= 0.0;
    const bool falling = a > 0.0 && b <= 0.0;
    if (!rising && !falling) continue;
    // Four samples bracketing the crossing, shifted inward at the record ends.
    if (n < 4) throw NumericalError("period estimate: need at least four samples");
    std::size_t first = i == 0 ? 0 : i - 1;
    if (first + 3 >= n) first = n - 4;
    std::array<double, 4> x{}, y{};
    for (std::size_t k = 0; k < 4; ++k) {
      x[k] = record.times[first + k];
      y[k] = record.states[first + k].q()[0];
    }
    (rising ? up : down).push_back(cubic_root(x, y, record.times[i], record.times[i + 1], a, b));
  }
  if (up.size() + down.size() < 3 || (up.size() < 2 && down.size() < 2))
    throw NumericalError("period estimate: trajectory crosses q = 0 fewer than three times");
  double sum = 0.0;
  std::size_t cycles = 0;
  for (const auto* list : {&up, &down}) {
    for (std::size_t i = 1; i < list->size(); ++i) {
      sum += (*list)[i] - (*list)[i - 1];
      ++cycles;
    }
  }
  return sum / static_cast<double>(cycles);
}

double convergence_order(const std::vector<std::pair<double, double>>& errors_by_tau) {
  if (errors_by_tau.size() < 2) throw ConfigError("convergence order: need at least two (tau, error) pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [tau, err] : errors_by_tau) {
    if (!(tau > 0.0)) throw ConfigError("convergence order: tau must be positive");
    if (!(err > 0.0)) throw ConfigError("convergence order: errors must be positive");
    const double x = std::log(tau), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(errors_by_tau.size());
  const double den = n * sxx - sx * sx;
  if (std::abs(den) <= 1e-300) throw ConfigError("convergence order: tau values must be distinct");
  return (n * sxy - sx * sy) / den;
}

double optimal_order(double digits, double t) {
  if (!(t > 0.0)) throw ConfigError("optimal order: t must be positive");
  const double radicand = digits + std::log10(t) - 2.0;
  if (radicand < 0.0) throw ConfigError("optimal order: digits + log10(t) - 2 must be non-negative");
  return std::sqrt(2.0 * radicand);
}

RunRecord reference_trajectory(const HamiltonianModel& model, const PhaseState& state0, double t_end,
                               double sample_dt, const ReferenceSettings& settings) {
  if (!(settings.tau_ref > 0.0)) throw ConfigError("reference: tau_ref must be positive");
  if (!(sample_dt > 0.0)) throw ConfigError("reference: sample_dt must be positive");
  if (t_end < 0.0) throw ConfigError("reference: t_end must be non-negative");
  const long stride = integer_ratio(sample_dt, settings.tau_ref, "reference sample_dt");
  const long steps = integer_ratio(t_end, settings.tau_ref, "reference t_end");
  SchemeConfig cfg;
  cfg.order = settings.order;
  cfg.tau = settings.tau_ref;
  RunRecord rec = record_run(model, state0, cfg, steps, stride, settings.precision);
  rec.is_reference = true;
  return rec;
}

LinearFit fit_through_origin(const std::vector<double>& t, const std::vector<double>& y, double t_min, double t_max) {
  if (t.size() != y.size()) throw ConfigError("linear fit: length mismatch");
  double sty = 0, stt = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min - 1e-12 || t[i] > t_max + 1e-12) continue;
    sty += t[i] * y[i];
    stt += t[i] * t[i];
    ++count;
  }
  if (count < 2 || stt == 0.0) throw ConfigError("linear fit: fewer than two samples in the window");
  const double slope = sty / stt;
  double res = 0, norm = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min - 1e-12 || t[i] > t_max + 1e-12) continue;
    res += std::pow(y[i] - slope * t[i], 2);
    norm += y[i] * y[i];
  }
  return {slope, 0.0, norm > 0.0 ? std::sqrt(res / norm) : 0.0};
}

}  // namespace modsplit
