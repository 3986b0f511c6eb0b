#pragma once

// Kick-move-kick integrators of order 2, 4, 6 and 8 for separable Hamiltonians.
//
// A step is kick(tau/2) . move(tau) . kick(tau/2). The kicks use the modified
// potential V_eff = V + tau^2 V2 + ..., always with the full step tau inside
// the corrections. The move is the canonical map of the generating function
//   G(q, P) = q.P + tau (1/2) P.M.P + sum_k tau^k G_k(q, P),
// i.e. Q = dG/dP and p = dG/dq. The implicit push P = p - d(Delta G)/dq is
// solved by fixed-point iteration, which contracts at a rate ~ tau^3.

#include "modsplit/coefficients.hpp"
#include "modsplit/core.hpp"

#include <functional>
#include <utility>

namespace modsplit {

struct PushReport {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = true;
  /// False when a residual failed to decrease after the first iteration.
  bool contracting = true;
  /// Relative sup-norm residual of each iterate, starting with P = p.
  std::vector<double> residuals;
};

/// Thrown when the push iteration does not reach push_tol within push_max_iter.
class PushSolveError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct PushResult {
  Vector P;
  PushReport report;
};

struct StepResult {
  PhaseState state;
  PushReport report;
};

/// grad of tau^2 V2 + tau^4 V4 + ... truncated for the order.
Vector correction_grad_V(const HamiltonianModel& model, const Vector& q, double tau, int order);
/// grad of V + tau^2 V2 + ... truncated for the order.
Vector effective_grad_V(const HamiltonianModel& model, const Vector& q, double tau, int order);

PhaseState kick(const PhaseState& state, const HamiltonianModel& model, double half_tau, double tau_for_corrections,
                int order);

/// q-gradient of Delta G(q, P; tau); the drift part contributes nothing.
Vector delta_G_grad_q(const HamiltonianModel& model, const Vector& q, const Vector& P, double tau, int order);
/// P-gradient of the tau^3 and higher terms of Delta G.
Vector generating_correction_grad_P(const HamiltonianModel& model, const Vector& q, const Vector& P, double tau,
                                    int order);
/// P-gradient of Delta G(q, P; tau), including the drift term tau M P.
Vector delta_G_grad_P(const HamiltonianModel& model, const Vector& q, const Vector& P, double tau, int order);

/// Solves P = p - d(Delta G)(q, P)/dq by fixed-point iteration. Stops once the
/// change between iterates drops to config.push_tol relative to |p|_inf + 1 and
/// returns that last update.
PushResult solve_push(const HamiltonianModel& model, const Vector& q, const Vector& p, const SchemeConfig& config);

StepResult move(const PhaseState& state, const HamiltonianModel& model, const SchemeConfig& config);

StepResult step(const PhaseState& state, const HamiltonianModel& model, const SchemeConfig& config);

using StepObserver = std::function<void(long step_index, const PhaseState& state, const PushReport& report)>;

/// Applies `step` n_steps times; the observer sees each new state (step index from 1).
PhaseState integrate(const PhaseState& state0, const HamiltonianModel& model, const SchemeConfig& config,
                     long n_steps, const StepObserver& observer = {});

// ---------------------------------------------------------------------------
// Steps with the state held in ExtReal. Positions, momenta, grad V and the
// drift are wide; the tau^2-and-higher corrections are evaluated in double.
// The push is iterated past push_tol until its residual stops shrinking.

/// tau in ExtReal; a step within 1e-12 of 1/n becomes exactly 1/n.
ExtReal widen_step(double tau);

struct ExtendedStepResult {
  ExtendedState state;
  PushReport report;
};

ExtendedStepResult step_extended(const ExtendedState& state, const HamiltonianModel& model,
                                 const SchemeConfig& config);

using ExtendedStepObserver =
    std::function<void(long step_index, const ExtendedState& state, const PushReport& report)>;

ExtendedState integrate_extended(const ExtendedState& state0, const HamiltonianModel& model,
                                 const SchemeConfig& config, long n_steps, const ExtendedStepObserver& observer = {});

// ---------------------------------------------------------------------------
// Linear systems H = 1/2 p^T M p + 1/2 q^T K q.

struct ModifiedCoefficients {
  double m;
  double k;
};

/// m = sin(tau)/tau, k = (2/tau) tan(tau/2); exact for the unit oscillator, 0 < tau < pi.
ModifiedCoefficients modified_coeffs_1d(double tau);

struct ModifiedMatrices {
  Matrix m_tau;
  Matrix k_tau;
};

/// Truncated series for M_tau, K_tau up to tau^(order-2).
ModifiedMatrices modified_matrices(const Matrix& m, const Matrix& k, double tau, int order);

/// One kick-move-kick step with constant matrices: p -= tau/2 K q; q += tau M p; p -= tau/2 K q.
PhaseState linear_step(const PhaseState& state, const Matrix& m_tau, const Matrix& k_tau, double tau);

}  // namespace modsplit
