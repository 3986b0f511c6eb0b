#include "modsplit/models.hpp"

#include <cmath>
#include <numbers>

namespace modsplit {

// ---------------------------------------------------------------------------
// QuadraticModel

QuadraticModel::QuadraticModel(MassStructure mass, Matrix stiffness) : mass_(std::move(mass)), k_(std::move(stiffness)) {
  const auto n = static_cast<Eigen::Index>(mass_.dim());
  if (k_.rows() != n || k_.cols() != n) throw ConfigError("quadratic model: stiffness dimension does not match mass");
  const double scale = std::max(1.0, k_.cwiseAbs().maxCoeff());
  if ((k_ - k_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ConfigError("quadratic model: stiffness is not symmetric");
  k_ = 0.5 * (k_ + k_.transpose());
  prepare_expansions();
}

QuadraticModel QuadraticModel::harmonic() { return {MassStructure::identity(1), Matrix::Identity(1, 1)}; }

double QuadraticModel::potential(const Vector& q) const { return 0.5 * q.dot(k_ * q); }

Vector QuadraticModel::grad_potential(const Vector& q) const { return k_ * q; }

ExtVector QuadraticModel::grad_potential_extended(std::span<const ExtReal> q) const {
  ExtVector g(q.size(), ExtReal(0));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      g[i] += q[j] * k_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return g;
}

Jet QuadraticModel::potential(std::span<const Jet> q) const {
  Jet acc;
  for (Eigen::Index i = 0; i < k_.rows(); ++i) {
    Jet row;
    for (Eigen::Index j = 0; j < k_.cols(); ++j)
      if (k_(i, j) != 0.0) row += q[static_cast<std::size_t>(j)] * k_(i, j);
    acc += q[static_cast<std::size_t>(i)] * row;
  }
  return acc * 0.5;
}

Vector QuadraticModel::contract(const Vector& q, std::span<const Vector* const> dirs) const {
  switch (dirs.size()) {
    case 0:
      return k_ * q;
    case 1:
      return k_ * *dirs[0];
    default:
      return Vector::Zero(q.size());
  }
}

// ---------------------------------------------------------------------------
// QuarticOscillator

QuarticOscillator::QuarticOscillator() : mass_(MassStructure::identity(1)) { prepare_expansions(); }

double QuarticOscillator::potential(const Vector& q) const { return 0.25 * std::pow(q[0], 4); }

Vector QuarticOscillator::grad_potential(const Vector& q) const { return Vector::Constant(1, std::pow(q[0], 3)); }

ExtVector QuarticOscillator::grad_potential_extended(std::span<const ExtReal> q) const {
  return {q[0] * q[0] * q[0]};
}

Jet QuarticOscillator::potential(std::span<const Jet> q) const { return pow(q[0], 4) * 0.25; }

Vector QuarticOscillator::contract(const Vector& q, std::span<const Vector* const> dirs) const {
  const double x = q[0];
  double d = 0.0;
  switch (dirs.size() + 1) {
    case 1: d = x * x * x; break;
    case 2: d = 3.0 * x * x; break;
    case 3: d = 6.0 * x; break;
    case 4: d = 6.0; break;
    default: d = 0.0;
  }
  for (const Vector* v : dirs) d *= (*v)[0];
  return Vector::Constant(1, d);
}

// ---------------------------------------------------------------------------
// FPUChain

FPUChain::FPUChain(FPUParams params) : params_(params), mass_(MassStructure::identity(params.d < 1 ? 1 : params.d)) {
  if (params_.d < 2) throw ConfigError("fpu chain needs at least 2 particles");
  if (params_.omega2 < 0.0) throw ConfigError("fpu chain: omega2 must be non-negative");
  for (std::size_t m = 0; m + 1 < params_.d; ++m) bonds_.emplace_back(m, m + 1);
  if (params_.periodic) bonds_.emplace_back(params_.d - 1, 0);
  prepare_expansions();
}

double FPUChain::bond_derivative(int k, double s) const {
  const double a = params_.alpha;
  const double b = params_.beta;
  switch (k) {
    case 0: return s * s * (0.5 + s * (a / 3.0 + 0.25 * b * s));
    case 1: return s + s * s * (a + b * s);
    case 2: return 1.0 + s * (2.0 * a + 3.0 * b * s);
    case 3: return 2.0 * a + 6.0 * b * s;
    case 4: return 6.0 * b;
    default: return 0.0;
  }
}

template <class S>
S FPUChain::potential_impl(std::span<const S> q) const {
  S acc = S(0.0);
  if (params_.omega2 != 0.0)
    for (const auto& x : q) acc = acc + x * x * (0.5 * params_.omega2);
  for (const auto& [i, j] : bonds_) {
    const S s = q[j] - q[i];
    const S s2 = s * s;
    acc = acc + s2 * 0.5 + s2 * s * (params_.alpha / 3.0) + s2 * s2 * (0.25 * params_.beta);
  }
  return acc;
}

double FPUChain::potential(const Vector& q) const {
  return potential_impl<double>(std::span<const double>(q.data(), static_cast<std::size_t>(q.size())));
}

Jet FPUChain::potential(std::span<const Jet> q) const { return potential_impl<Jet>(q); }

template <class S>
std::vector<S> FPUChain::grad_impl(std::span<const S> q) const {
  std::vector<S> g(q.size(), S(0));
  if (params_.omega2 != 0.0)
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = q[i] * params_.omega2;
  for (const auto& [i, j] : bonds_) {
    const S s = q[j] - q[i];
    const S f = s + s * s * (params_.alpha + s * params_.beta);
    g[j] += f;
    g[i] -= f;
  }
  return g;
}

Vector FPUChain::grad_potential(const Vector& q) const { return contract(q, {}); }

ExtVector FPUChain::grad_potential_extended(std::span<const ExtReal> q) const { return grad_impl<ExtReal>(q); }

Vector FPUChain::contract(const Vector& q, std::span<const Vector* const> dirs) const {
  const int order = static_cast<int>(dirs.size()) + 1;
  Vector w = Vector::Zero(q.size());
  if (order == 1) w = params_.omega2 * q;
  else if (order == 2 && params_.omega2 != 0.0) w = params_.omega2 * *dirs[0];
  if (order > 4) return w;
  for (const auto& [i, j] : bonds_) {
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    double c = bond_derivative(order, q[jj] - q[ii]);
    for (const Vector* v : dirs) c *= (*v)[jj] - (*v)[ii];
    w[jj] += c;
    w[ii] -= c;
  }
  return w;
}

PhaseState fpu_initial_state(const FPUChain& chain, double energy, int mode) {
  if (!(energy >= 0.0) || !std::isfinite(energy)) throw ConfigError("fpu initial state: energy must be non-negative");
  const std::size_t d = chain.dim();
  if (mode < 1 || static_cast<std::size_t>(mode) >= d)
    throw ConfigError("fpu initial state: mode must lie in [1, d-1]");
  Vector p(static_cast<Eigen::Index>(d));
  for (std::size_t m = 0; m < d; ++m) {
    const double x = chain.params().periodic
                         ? 2.0 * std::numbers::pi * mode * static_cast<double>(m) / static_cast<double>(d)
                         : std::numbers::pi * mode * (static_cast<double>(m) + 0.5) / static_cast<double>(d);
    p[static_cast<Eigen::Index>(m)] = std::cos(x);
  }
  const double kinetic = 0.5 * p.squaredNorm();
  p *= std::sqrt(energy / kinetic);
  return {Vector::Zero(static_cast<Eigen::Index>(d)), p};
}

}  // namespace modsplit
