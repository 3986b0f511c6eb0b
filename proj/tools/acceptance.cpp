// Runs the ten acceptance checks and prints one PASS/FAIL line each.
// Exit status is the number of failed checks.

#include "modsplit/coefficients.hpp"
#include "modsplit/derivop.hpp"
#include "modsplit/diagnostics.hpp"
#include "modsplit/models.hpp"

#include <fmt/core.h>

#include <chrono>
#include <functional>
#include <memory>
#include <random>
#include <string>

using namespace modsplit;

namespace {

constexpr double quartic_period = 6.236339;

SchemeConfig cfg(int order, double tau) {
  SchemeConfig c;
  c.order = order;
  c.tau = tau;
  return c;
}

PhaseState unit_quartic() { return {Vector::Zero(1), Vector::Constant(1, 1.0)}; }

Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

double rel_diff(const Vector& a, const Vector& b) {
  const double scale = std::max(a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>());
  const double d = (a - b).lpNorm<Eigen::Infinity>();
  return scale == 0.0 ? d : d / scale;
}

struct Outcome {
  bool pass;
  std::string detail;
};

struct NamedModel {
  std::string label;
  std::shared_ptr<HamiltonianModel> model;
  double scale;
};

std::vector<NamedModel> builtin_models() {
  Matrix k(2, 2);
  k << 1.5, -0.4, -0.4, 0.8;
  Matrix m(2, 2);
  m << 1.0, 0.3, 0.3, 0.7;
  return {
      {"harmonic", std::make_shared<QuadraticModel>(QuadraticModel::harmonic()), 1.0},
      {"quadratic", std::make_shared<QuadraticModel>(MassStructure::dense(m), k), 1.0},
      {"quartic", std::make_shared<QuarticOscillator>(), 1.0},
      {"fpu", std::make_shared<FPUChain>(FPUParams{9, 0.0, 0.0, 1.0, false}), 0.5},
  };
}

Outcome harmonic_exactness() {
  double worst = 0.0;
  for (double tau : {0.3, 1.0, 3.0}) {
    const auto mk = modified_coeffs_1d(tau);
    const Matrix m = Matrix::Constant(1, 1, mk.m), k = Matrix::Constant(1, 1, mk.k);
    PhaseState s(Vector::Constant(1, 1.0), Vector::Constant(1, 0.5));
    for (int i = 1; i <= 10000; ++i) {
      s = linear_step(s, m, k, tau);
      const double t = i * tau;
      worst = std::max({worst, std::abs(s.q()[0] - (std::cos(t) + 0.5 * std::sin(t))),
                        std::abs(s.p()[0] - (-std::sin(t) + 0.5 * std::cos(t)))});
    }
  }
  return {worst <= 1e-10, fmt::format("max componentwise deviation {:.2e}", worst)};
}

Outcome quartic_period_check() {
  const QuarticOscillator quartic;
  const RunRecord r = record_run(quartic, unit_quartic(), cfg(8, 0.05), 800);
  const double t = period_estimate(r);
  return {std::abs(t - quartic_period) <= 1e-5, fmt::format("period {:.9f}", t)};
}

Outcome order_collapse() {
  const QuarticOscillator quartic;
  const double t0 = 15 * quartic_period, t1 = 16 * quartic_period;
  bool pass = true;
  std::string detail = "mismatch/peak-to-peak:";
  for (int order : {2, 4, 6, 8}) {
    const RunRecord a = record_run(quartic, unit_quartic(), cfg(order, 0.1), 1000);
    const RunRecord b = record_run(quartic, unit_quartic(), cfg(order, 0.05), 2000);
    const auto sa = scaled_energy_error(a, 0.5, 0.1, order);
    const auto sb = scaled_energy_error(b, 0.5, 0.05, order);
    double lo = 1e300, hi = -1e300, gap = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b.times[j] < t0 || b.times[j] > t1) continue;
      lo = std::min(lo, sb[j]);
      hi = std::max(hi, sb[j]);
      if (j % 2 == 0) gap = std::max(gap, std::abs(sa[j / 2] - sb[j]));
    }
    const double rel = gap / (hi - lo);
    pass = pass && rel <= 0.30;
    detail += fmt::format(" N={} {:.3f}", order, rel);
  }
  return {pass, detail};
}

std::vector<double> fpu_slopes(Precision precision, std::string& errors) {
  const FPUChain fpu({9, 0.0, 0.0, 1.0, false});
  const PhaseState s0 = fpu_initial_state(fpu, 1.425);
  const RunRecord ref = reference_trajectory(fpu, s0, 10.0, 10.0, {5e-4, 8, precision});
  std::vector<double> slopes;
  for (int order : {2, 4, 6, 8}) {
    std::vector<std::pair<double, double>> pairs;
    for (int n : {20, 40, 80}) {
      const double tau = 1.0 / n;
      const RunRecord r = record_run(fpu, s0, cfg(order, tau), 10 * n, 10 * n, precision);
      pairs.emplace_back(tau, global_error(r, ref).back());
      errors += fmt::format(" {:.1e}", pairs.back().second);
    }
    slopes.push_back(convergence_order(pairs));
    errors += " |";
  }
  return slopes;
}

Outcome global_error_scaling() {
  std::string wide_err, std_err;
  const auto wide = fpu_slopes(Precision::extended, wide_err);
  const auto narrow = fpu_slopes(Precision::standard, std_err);
  bool pass = true;
  std::string detail = "slopes (extended precision):";
  for (std::size_t i = 0; i < wide.size(); ++i) {
    const int order = 2 * static_cast<int>(i) + 2;
    pass = pass && std::abs(wide[i] - order) <= 0.5;
    detail += fmt::format(" N={} {:.3f}", order, wide[i]);
  }
  detail += "; double precision for comparison:";
  for (std::size_t i = 0; i < narrow.size(); ++i) detail += fmt::format(" {:.3f}", narrow[i]);
  return {pass, detail};
}

Outcome linear_growth() {
  const FPUChain fpu({9, 0.0, 0.0, 1.0, false});
  const PhaseState s0 = fpu_initial_state(fpu, 1.425);
  const RunRecord ref = reference_trajectory(fpu, s0, 10.0, 0.25, {5e-4, 8, Precision::extended});
  const RunRecord r = record_run(fpu, s0, cfg(4, 1.0 / 40), 400, 10, Precision::extended);
  const LinearFit fit = fit_through_origin(r.times, global_error(r, ref), 1.0, 10.0);
  return {fit.relative_residual <= 0.20,
          fmt::format("slope {:.3e}, relative residual {:.3f}", fit.slope, fit.relative_residual)};
}

Matrix fd_jacobian(const HamiltonianModel& model, const PhaseState& s, const SchemeConfig& c) {
  const double h = 1e-6;
  const Vector z = s.stacked();
  Matrix j(z.size(), z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    Vector a = z, b = z;
    a[k] += h;
    b[k] -= h;
    j.col(k) = (step(PhaseState::from_stacked(a), model, c).state.stacked() -
                step(PhaseState::from_stacked(b), model, c).state.stacked()) /
               (2.0 * h);
  }
  return j;
}

Outcome symplecticity() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (const auto& nm : builtin_models()) {
    const auto n = static_cast<Eigen::Index>(nm.model->dim());
    Matrix omega = Matrix::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Matrix::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    for (int order : {2, 4, 6, 8})
      for (int trial = 0; trial < 20; ++trial) {
        const PhaseState s(random_vector(rng, n, nm.scale), random_vector(rng, n, nm.scale));
        const Matrix j = fd_jacobian(*nm.model, s, cfg(order, 0.1));
        worst = std::max(worst, (j.transpose() * omega * j - omega).cwiseAbs().maxCoeff());
      }
  }
  return {worst <= 1e-7, fmt::format("max |J^T W J - W| {:.2e}", worst)};
}

Outcome push_behaviour() {
  const QuarticOscillator quartic;
  const FPUChain fpu({9, 0.0, 0.0, 1.0, false});
  int max_iter = 0;
  double max_ratio = 0.0;
  bool ok = true;
  const auto observe = [&](long, const PhaseState&, const PushReport& r) {
    ok = ok && r.converged && r.contracting;
    max_iter = std::max(max_iter, r.iterations);
    for (std::size_t i = 1; i < r.residuals.size(); ++i)
      if (r.residuals[i - 1] > 0.0) max_ratio = std::max(max_ratio, r.residuals[i] / r.residuals[i - 1]);
  };
  for (int order : {4, 6, 8})
    for (double tau : {0.1, 0.05}) {
      integrate(unit_quartic(), quartic, cfg(order, tau), 1000, observe);
      integrate(fpu_initial_state(fpu, 1.425), fpu, cfg(order, tau), 1000, observe);
    }
  const bool pass = ok && max_iter <= 5 && max_ratio <= 0.1;
  return {pass, fmt::format("max iterations {}, max residual ratio {:.2e}", max_iter, max_ratio)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(99);
  const auto words = required_words(8);
  std::vector<NamedModel> models = builtin_models();
  models.push_back({"fpu alpha+beta", std::make_shared<FPUChain>(FPUParams{9, 0.4, 0.6, 1.2, true}), 0.5});
  double worst = 0.0;
  for (const auto& nm : models) {
    const auto n = static_cast<Eigen::Index>(nm.model->dim());
    for (int trial = 0; trial < 100; ++trial) {
      const Vector q = random_vector(rng, n, nm.scale), p = random_vector(rng, n, nm.scale);
      for (const auto& w : words) {
        const double a = nm.model->word_value(w, q, p), b = word_value_generic(*nm.model, w, q, p);
        const double scale = std::max(std::abs(a), std::abs(b));
        worst = std::max(worst, scale == 0.0 ? 0.0 : std::abs(a - b) / scale);
        worst = std::max(worst, rel_diff(nm.model->word_grad_q(w, q, p), word_grad_q_generic(*nm.model, w, q, p)));
        worst = std::max(worst, rel_diff(nm.model->word_grad_p(w, q, p), word_grad_p_generic(*nm.model, w, q, p)));
      }
    }
  }
  return {worst <= 1e-11, fmt::format("worst relative mismatch {:.2e} over {} words", worst, words.size())};
}

Outcome long_time_boundedness() {
  const FPUChain fpu({9, 0.0, 0.0, 1.0, false});
  const PhaseState s0 = fpu_initial_state(fpu, 1.425);
  const double h0 = fpu.hamiltonian(s0);
  const long steps = 100000;
  bool pass = true;
  std::string detail = "late/early max |dH|:";
  for (int order : {2, 4, 6, 8}) {
    double early = 0.0, late = 0.0;
    integrate(s0, fpu, cfg(order, 1.0 / 12), steps, [&](long i, const PhaseState& s, const PushReport&) {
      const double e = std::abs(fpu.hamiltonian(s) - h0);
      if (i <= 1000) early = std::max(early, e);
      if (i > steps - 10000) late = std::max(late, e);
    });
    pass = pass && late <= 10.0 * early;
    detail += fmt::format(" N={} {:.2f}", order, late / early);
  }
  return {pass, detail};
}

Vector verlet_force(const std::string& label, const Vector& q, const Matrix& k) {
  if (label == "quartic") return Vector::Constant(1, -q[0] * q[0] * q[0]);
  if (label == "fpu") {
    Vector f = Vector::Zero(q.size());
    for (Eigen::Index i = 0; i + 1 < q.size(); ++i) {
      const double d = q[i + 1] - q[i];
      f[i] += d + d * d * d;
      f[i + 1] -= d + d * d * d;
    }
    return f;
  }
  return -(k * q);
}

Outcome verlet_equivalence() {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (const auto& nm : builtin_models()) {
    const auto n = static_cast<Eigen::Index>(nm.model->dim());
    Matrix k = Matrix::Zero(n, n);
    if (const auto* quad = dynamic_cast<const QuadraticModel*>(nm.model.get())) k = quad->stiffness();
    const Matrix minv = nm.model->mass().to_matrix();
    const double tau = 0.1;
    PhaseState s(random_vector(rng, n, nm.scale), random_vector(rng, n, nm.scale));
    for (int i = 0; i < 1000; ++i) {
      Vector v = s.p() + 0.5 * tau * verlet_force(nm.label, s.q(), k);
      const Vector q = s.q() + tau * (minv * v);
      v += 0.5 * tau * verlet_force(nm.label, q, k);
      const PhaseState next = step(s, *nm.model, cfg(2, tau)).state;
      worst = std::max(worst, rel_diff(next.stacked(), PhaseState(q, v).stacked()));
      s = next;
    }
  }
  return {worst <= 1e-13, fmt::format("max per-step relative deviation {:.2e}", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"harmonic exactness", harmonic_exactness},
      {"quartic period", quartic_period_check},
      {"order collapse", order_collapse},
      {"global-error scaling", global_error_scaling},
      {"linear error growth", linear_growth},
      {"symplecticity", symplecticity},
      {"push solver", push_behaviour},
      {"oracle equivalence", oracle_equivalence},
      {"long-time boundedness", long_time_boundedness},
      {"verlet equivalence", verlet_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    fmt::print("{} {:2d} {:<22} {} ({:.1f} s)\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first, o.detail, secs);
    std::fflush(stdout);
  }
  return failed;
}
