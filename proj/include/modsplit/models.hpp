#pragma once

// Built-in Hamiltonian models.
//
// Each built-in model supplies V, grad V, V over Jets (for the generic word
// oracle) and the derivative-tensor contractions that drive the fast word
// path in contraction.hpp. GenericModel wraps any templated potential and
// answers word queries through the slow generic route.

#include "modsplit/contraction.hpp"
#include "modsplit/derivop.hpp"
#include "modsplit/jet.hpp"

#include <utility>

namespace modsplit {

/// H = 1/2 p^T M p + 1/2 q^T K q.
class QuadraticModel final : public ContractionModel {
 public:
  QuadraticModel(MassStructure mass, Matrix stiffness);
  /// 1-D oscillator with unit mass and stiffness.
  static QuadraticModel harmonic();

  const Matrix& stiffness() const noexcept { return k_; }

  std::size_t dim() const override { return mass_.dim(); }
  const MassStructure& mass() const override { return mass_; }
  double potential(const Vector& q) const override;
  Vector grad_potential(const Vector& q) const override;
  ExtVector grad_potential_extended(std::span<const ExtReal> q) const override;
  Jet potential(std::span<const Jet> q) const override;
  Vector contract(const Vector& q, std::span<const Vector* const> dirs) const override;

 private:
  MassStructure mass_;
  Matrix k_;
};

/// H = 1/2 p^2 + 1/4 q^4 in one dimension.
class QuarticOscillator final : public ContractionModel {
 public:
  QuarticOscillator();

  std::size_t dim() const override { return 1; }
  const MassStructure& mass() const override { return mass_; }
  double potential(const Vector& q) const override;
  Vector grad_potential(const Vector& q) const override;
  ExtVector grad_potential_extended(std::span<const ExtReal> q) const override;
  Jet potential(std::span<const Jet> q) const override;
  Vector contract(const Vector& q, std::span<const Vector* const> dirs) const override;

 private:
  MassStructure mass_;
};

struct FPUParams {
  std::size_t d = 9;
  double omega2 = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  /// Adds the wrap bond U(q_0 - q_{d-1}); off reproduces the open chain.
  bool periodic = false;
};

/// Fermi-Pasta-Ulam alpha+beta chain with unit masses:
///   H = 1/2 sum p_m^2 + sum 1/2 omega2 q_m^2 + sum_{m=0}^{d-2} U(q_{m+1} - q_m),
///   U(s) = 1/2 s^2 + alpha/3 s^3 + beta/4 s^4.
class FPUChain final : public ContractionModel {
 public:
  explicit FPUChain(FPUParams params);

  const FPUParams& params() const noexcept { return params_; }

  std::size_t dim() const override { return params_.d; }
  const MassStructure& mass() const override { return mass_; }
  double potential(const Vector& q) const override;
  Vector grad_potential(const Vector& q) const override;
  ExtVector grad_potential_extended(std::span<const ExtReal> q) const override;
  Jet potential(std::span<const Jet> q) const override;
  Vector contract(const Vector& q, std::span<const Vector* const> dirs) const override;

  /// k-th derivative of the bond potential U.
  double bond_derivative(int k, double s) const;

 private:
  template <class S>
  S potential_impl(std::span<const S> q) const;
  template <class S>
  std::vector<S> grad_impl(std::span<const S> q) const;

  FPUParams params_;
  MassStructure mass_;
  std::vector<std::pair<std::size_t, std::size_t>> bonds_;  // s = q[second] - q[first]
};

/// Zero displacement with momenta along a low Fourier mode, scaled so that
/// H equals `energy`. Mode 1 is the lowest non-translational mode.
PhaseState fpu_initial_state(const FPUChain& chain, double energy, int mode = 1);

/// Adapter for any potential functor templated over double and Jet.
/// Word queries go through the generic jet route.
template <class Potential>
class GenericModel final : public HamiltonianModel {
 public:
  GenericModel(MassStructure mass, Potential v) : mass_(std::move(mass)), v_(std::move(v)) {}

  std::size_t dim() const override { return mass_.dim(); }
  const MassStructure& mass() const override { return mass_; }
  double potential(const Vector& q) const override {
    return v_(std::span<const double>(q.data(), static_cast<std::size_t>(q.size())));
  }
  Vector grad_potential(const Vector& q) const override {
    Vector g(q.size());
    Vector e = Vector::Zero(q.size());
    for (Eigen::Index a = 0; a < q.size(); ++a) {
      e[a] = 1.0;
      g[a] = directional_derivs(*this, q, e, 1)[1];
      e[a] = 0.0;
    }
    return g;
  }
  Jet potential(std::span<const Jet> q) const override { return v_(q); }
  double word_value(const DerivativeWord& w, const Vector& q, const Vector& p) const override {
    return word_value_generic(*this, w, q, p);
  }
  Vector word_grad_q(const DerivativeWord& w, const Vector& q, const Vector& p) const override {
    return word_grad_q_generic(*this, w, q, p);
  }
  Vector word_grad_p(const DerivativeWord& w, const Vector& q, const Vector& p) const override {
    return word_grad_p_generic(*this, w, q, p);
  }
  int max_word_order_supported() const override { return 8; }

 private:
  MassStructure mass_;
  Potential v_;
};

}  // namespace modsplit
