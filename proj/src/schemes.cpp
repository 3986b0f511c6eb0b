#include "modsplit/schemes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace modsplit {
namespace {

void check_order(const HamiltonianModel& model, int order) {
  if (!is_supported_order(order)) throw ConfigError("unsupported scheme order " + std::to_string(order));
  if (order > model.max_word_order_supported())
    throw ConfigError("model supports scheme orders up to " + std::to_string(model.max_word_order_supported()));
}

std::string describe(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace

Vector correction_grad_V(const HamiltonianModel& model, const Vector& q, double tau, int order) {
  check_order(model, order);
  Vector g = Vector::Zero(q.size());
  const int vmax = potential_truncation(order);
  if (vmax == 0) return g;
  const Vector no_momentum = Vector::Zero(q.size());
  for (const auto& term : potential_correction_terms()) {
    if (term.tau_power > vmax) continue;
    g += (term.coeff.value() * std::pow(tau, term.tau_power)) * model.word_grad_q(term.word, q, no_momentum);
  }
  return g;
}

Vector effective_grad_V(const HamiltonianModel& model, const Vector& q, double tau, int order) {
  return model.grad_potential(q) + correction_grad_V(model, q, tau, order);
}

PhaseState kick(const PhaseState& state, const HamiltonianModel& model, double half_tau, double tau_for_corrections,
                int order) {
  return {state.q(), state.p() - half_tau * effective_grad_V(model, state.q(), tau_for_corrections, order)};
}

Vector delta_G_grad_q(const HamiltonianModel& model, const Vector& q, const Vector& P, double tau, int order) {
  check_order(model, order);
  Vector g = Vector::Zero(q.size());
  const int gmax = generating_truncation(order);
  for (const auto& term : generating_correction_terms()) {
    if (term.tau_power > gmax) continue;
    g += (term.coeff.value() * std::pow(tau, term.tau_power)) * model.word_grad_q(term.word, q, P);
  }
  return g;
}

Vector generating_correction_grad_P(const HamiltonianModel& model, const Vector& q, const Vector& P, double tau,
                                    int order) {
  check_order(model, order);
  Vector g = Vector::Zero(q.size());
  const int gmax = generating_truncation(order);
  for (const auto& term : generating_correction_terms()) {
    if (term.tau_power > gmax) continue;
    g += (term.coeff.value() * std::pow(tau, term.tau_power)) * model.word_grad_p(term.word, q, P);
  }
  return g;
}

Vector delta_G_grad_P(const HamiltonianModel& model, const Vector& q, const Vector& P, double tau, int order) {
  return tau * model.mass().apply(P) + generating_correction_grad_P(model, q, P, tau, order);
}

namespace {

[[noreturn]] void push_failure(const PushReport& report, const Vector& q, const Vector& p, const SchemeConfig& config) {
  std::ostringstream os;
  os.precision(17);
  os << "push iteration did not converge within " << config.push_max_iter << " iterations (residual "
     << report.final_residual << ") at q=" << describe(q) << " p=" << describe(p) << " tau=" << config.tau
     << "; the timestep is likely too large for the iteration to contract";
  throw PushSolveError(os.str());
}

// Iterates delta <- -dG(q, p + delta)/dq. With `polish`, keeps going past the
// tolerance until the residual stops shrinking.
Vector iterate_push(const HamiltonianModel& model, const Vector& q, const Vector& p, const SchemeConfig& config,
                    bool polish, PushReport& report) {
  const double scale = p.lpNorm<Eigen::Infinity>() + 1.0;
  Vector delta = Vector::Zero(p.size());
  for (int n = 1;; ++n) {
    Vector next = -delta_G_grad_q(model, q, p + delta, config.tau, config.order);
    const double r = (next - delta).lpNorm<Eigen::Infinity>() / scale;
    if (!std::isfinite(r)) throw PushSolveError("push iteration diverged at q=" + describe(q) + " p=" + describe(p));
    const bool stalled = !report.residuals.empty() && r >= report.residuals.back();
    if (report.converged) {
      delta = std::move(next);
      if (stalled || r == 0.0 || n >= config.push_max_iter) return delta;
      report.residuals.push_back(r);
      report.final_residual = r;
      report.iterations = n;
      continue;
    }
    if (stalled) report.contracting = false;
    report.residuals.push_back(r);
    report.final_residual = r;
    report.iterations = n;
    delta = std::move(next);
    if (r <= config.push_tol) {
      report.converged = true;
      if (!polish || r == 0.0) return delta;
    } else if (n >= config.push_max_iter) {
      push_failure(report, q, p, config);
    }
  }
}

}  // namespace

PushResult solve_push(const HamiltonianModel& model, const Vector& q, const Vector& p, const SchemeConfig& config) {
  config.validate();
  check_order(model, config.order);
  PushResult out{p, {}};
  if (config.order == 2) return out;
  out.report.converged = false;
  out.P += iterate_push(model, q, p, config, false, out.report);
  return out;
}

StepResult move(const PhaseState& state, const HamiltonianModel& model, const SchemeConfig& config) {
  config.validate();
  check_order(model, config.order);
  if (config.order == 2) return {{state.q() + config.tau * model.mass().apply(state.p()), state.p()}, {}};
  auto push = solve_push(model, state.q(), state.p(), config);
  Vector Q = state.q() + delta_G_grad_P(model, state.q(), push.P, config.tau, config.order);
  return {{std::move(Q), std::move(push.P)}, std::move(push.report)};
}

StepResult step(const PhaseState& state, const HamiltonianModel& model, const SchemeConfig& config) {
  config.validate();
  const double half = 0.5 * config.tau;
  const PhaseState a = kick(state, model, half, config.tau, config.order);
  StepResult moved = move(a, model, config);
  return {kick(moved.state, model, half, config.tau, config.order), std::move(moved.report)};
}

PhaseState integrate(const PhaseState& state0, const HamiltonianModel& model, const SchemeConfig& config,
                     long n_steps, const StepObserver& observer) {
  if (n_steps < 0) throw ConfigError("number of steps must be non-negative");
  config.validate();
  PhaseState s = state0;
  for (long i = 1; i <= n_steps; ++i) {
    StepResult r = step(s, model, config);
    s = std::move(r.state);
    if (observer) observer(i, s, r.report);
  }
  return s;
}

ExtReal widen_step(double tau) {
  const double n = std::round(1.0 / tau);
  if (n >= 1.0 && std::abs(n * tau - 1.0) <= 1e-12) return ExtReal(1) / ExtReal(n);
  return ExtReal(tau);
}

ExtendedStepResult step_extended(const ExtendedState& state, const HamiltonianModel& model,
                                 const SchemeConfig& config) {
  config.validate();
  check_order(model, config.order);
  const std::size_t n = state.dim();
  const ExtReal tau = widen_step(config.tau);
  const ExtReal half = ExtReal(0.5) * tau;
  ExtendedState s = state;
  const auto kick_ext = [&] {
    const ExtVector g = model.grad_potential_extended(s.q());
    const Vector corr = correction_grad_V(model, s.rounded().q(), config.tau, config.order);
    for (std::size_t i = 0; i < n; ++i) s.p()[i] -= half * (g[i] + corr[static_cast<Eigen::Index>(i)]);
  };

  kick_ext();
  PushReport report;
  if (config.order != 2) {
    const PhaseState sd = s.rounded();
    report.converged = false;
    const Vector delta = iterate_push(model, sd.q(), sd.p(), config, true, report);
    for (std::size_t i = 0; i < n; ++i) s.p()[i] += delta[static_cast<Eigen::Index>(i)];
    const Vector corr = generating_correction_grad_P(model, sd.q(), s.rounded().p(), config.tau, config.order);
    const ExtVector mp = model.mass().apply(std::span<const ExtReal>(s.p()));
    for (std::size_t i = 0; i < n; ++i)
      s.q()[i] += tau * mp[i] + corr[static_cast<Eigen::Index>(i)];
  } else {
    const ExtVector mp = model.mass().apply(std::span<const ExtReal>(s.p()));
    for (std::size_t i = 0; i < n; ++i) s.q()[i] += tau * mp[i];
  }
  kick_ext();
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(static_cast<double>(s.q()[i])) || !std::isfinite(static_cast<double>(s.p()[i])))
      throw NumericalError("extended step produced a non-finite state");
  return {std::move(s), std::move(report)};
}

ExtendedState integrate_extended(const ExtendedState& state0, const HamiltonianModel& model,
                                 const SchemeConfig& config, long n_steps, const ExtendedStepObserver& observer) {
  if (n_steps < 0) throw ConfigError("number of steps must be non-negative");
  config.validate();
  ExtendedState s = state0;
  for (long i = 1; i <= n_steps; ++i) {
    ExtendedStepResult r = step_extended(s, model, config);
    s = std::move(r.state);
    if (observer) observer(i, s, r.report);
  }
  return s;
}

ModifiedCoefficients modified_coeffs_1d(double tau) {
  if (!(tau > 0.0) || !(tau < std::numbers::pi))
    throw ConfigError("modified coefficients need 0 < tau < pi");
  return {std::sin(tau) / tau, 2.0 / tau * std::tan(0.5 * tau)};
}

ModifiedMatrices modified_matrices(const Matrix& m, const Matrix& k, double tau, int order) {
  if (!is_supported_order(order)) throw ConfigError("unsupported scheme order " + std::to_string(order));
  if (m.rows() != m.cols() || k.rows() != k.cols() || m.rows() != k.rows())
    throw ConfigError("modified matrices: dimension mismatch");
  static constexpr double m_series[] = {-1.0 / 6.0, 1.0 / 120.0, -1.0 / 5040.0};
  static constexpr double k_series[] = {1.0 / 12.0, 1.0 / 120.0, 17.0 / 20160.0};

  ModifiedMatrices out{m, k};
  const Matrix km = k * m;
  Matrix power = km;  // (KM)^j
  double t2 = 1.0;
  for (int j = 1; 2 * j <= order - 2; ++j) {
    t2 *= tau * tau;
    out.m_tau += (m_series[j - 1] * t2) * (m * power);
    out.k_tau += (k_series[j - 1] * t2) * (power * k);
    power = power * km;
  }
  return out;
}

PhaseState linear_step(const PhaseState& state, const Matrix& m_tau, const Matrix& k_tau, double tau) {
  Vector p = state.p() - (0.5 * tau) * (k_tau * state.q());
  Vector q = state.q() + tau * (m_tau * p);
  p -= (0.5 * tau) * (k_tau * q);
  return {std::move(q), std::move(p)};
}

}  // namespace modsplit
