#pragma once

// Truncated multivariate Taylor arithmetic.
//
// A Jet holds the Taylor coefficients of a scalar function of a few
// perturbation variables e_0..e_{n-1} about 0. Each variable carries its own
// degree cap and products are truncated per variable ("box" truncation), so
// extracting the coefficient of e_v^k with k <= cap(v) is exact. A univariate
// jet is the one-variable case.
//
// A default-constructed Jet, or one built from a double, has no shape and acts
// as a plain constant; it adopts the shape of the other operand in arithmetic.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace modsplit {

class JetShape {
 public:
  explicit JetShape(std::vector<int> caps);

  std::size_t num_vars() const noexcept { return caps_.size(); }
  std::size_t size() const noexcept { return size_; }
  int cap(std::size_t var) const { return caps_.at(var); }
  std::size_t stride(std::size_t var) const { return strides_.at(var); }
  int exponent(std::size_t index, std::size_t var) const;

  /// Indices j with index+j a valid monomial of the product; index+j is that monomial.
  std::span<const std::size_t> partners(std::size_t index) const {
    return {partners_.data() + offsets_[index], offsets_[index + 1] - offsets_[index]};
  }

 private:
  std::vector<int> caps_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> partners_;
};

using JetShapePtr = std::shared_ptr<const JetShape>;

JetShapePtr make_jet_shape(std::vector<int> caps);

class Jet {
 public:
  Jet() = default;
  Jet(double value) : constant_(value) {}  // NOLINT(google-explicit-constructor)
  Jet(JetShapePtr shape, double value);

  /// value + e_var.
  static Jet variable(const JetShapePtr& shape, std::size_t var, double value);

  const JetShapePtr& shape() const noexcept { return shape_; }
  bool has_shape() const noexcept { return shape_ != nullptr; }

  double constant_term() const { return shape_ ? coeffs_[0] : constant_; }
  double coeff(std::size_t index) const;
  std::span<const double> coeffs() const { return coeffs_; }

  /// Coefficient of e_var^degree, as a jet over the same shape with var at degree 0.
  Jet slice(std::size_t var, int degree) const;
  bool all_finite() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) { return a += Jet(s); }
  friend Jet operator+(double s, Jet a) { return a += Jet(s); }
  friend Jet operator-(Jet a, double s) { return a -= Jet(s); }
  friend Jet operator-(double s, const Jet& a) { return Jet(s) - a; }
  friend Jet operator-(const Jet& a);

 private:
  void adopt(const JetShapePtr& shape);

  JetShapePtr shape_;
  std::vector<double> coeffs_;
  double constant_ = 0.0;
};

/// Non-negative integer power by repeated squaring.
Jet pow(const Jet& x, int n);

}  // namespace modsplit
