#include "modsplit/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace modsplit {

JetShape::JetShape(std::vector<int> caps) : caps_(std::move(caps)) {
  strides_.resize(caps_.size());
  for (std::size_t v = 0; v < caps_.size(); ++v) {
    if (caps_[v] < 0) throw std::invalid_argument("jet degree cap must be non-negative");
    strides_[v] = size_;
    size_ *= static_cast<std::size_t>(caps_[v] + 1);
  }

  std::vector<std::vector<int>> exps(size_, std::vector<int>(caps_.size()));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t v = 0; v < caps_.size(); ++v) exps[i][v] = exponent(i, v);

  offsets_.reserve(size_ + 1);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j + i < size_; ++j) {
      bool ok = true;
      for (std::size_t v = 0; v < caps_.size() && ok; ++v) ok = exps[i][v] + exps[j][v] <= caps_[v];
      if (ok) partners_.push_back(j);
    }
    offsets_.push_back(partners_.size());
  }
}

int JetShape::exponent(std::size_t index, std::size_t var) const {
  return static_cast<int>((index / strides_[var]) % static_cast<std::size_t>(caps_[var] + 1));
}

JetShapePtr make_jet_shape(std::vector<int> caps) { return std::make_shared<const JetShape>(std::move(caps)); }

Jet::Jet(JetShapePtr shape, double value) : shape_(std::move(shape)) {
  if (!shape_) {
    constant_ = value;
    return;
  }
  coeffs_.assign(shape_->size(), 0.0);
  coeffs_[0] = value;
}

Jet Jet::variable(const JetShapePtr& shape, std::size_t var, double value) {
  Jet j(shape, value);
  if (shape->cap(var) > 0) j.coeffs_[shape->stride(var)] = 1.0;
  return j;
}

double Jet::coeff(std::size_t index) const {
  if (!shape_) return index == 0 ? constant_ : 0.0;
  return coeffs_.at(index);
}

Jet Jet::slice(std::size_t var, int degree) const {
  if (!shape_) return Jet(degree == 0 ? constant_ : 0.0);
  Jet out(shape_, 0.0);
  if (degree < 0 || degree > shape_->cap(var)) return out;
  const std::size_t stride = shape_->stride(var);
  const std::size_t block = stride * static_cast<std::size_t>(shape_->cap(var) + 1);
  for (std::size_t base = 0; base < coeffs_.size(); base += block)
    for (std::size_t low = 0; low < stride; ++low)
      out.coeffs_[base + low] = coeffs_[base + low + stride * static_cast<std::size_t>(degree)];
  return out;
}

bool Jet::all_finite() const {
  if (!shape_) return std::isfinite(constant_);
  for (double c : coeffs_)
    if (!std::isfinite(c)) return false;
  return true;
}

void Jet::adopt(const JetShapePtr& shape) {
  if (shape_ || !shape) return;
  shape_ = shape;
  coeffs_.assign(shape_->size(), 0.0);
  coeffs_[0] = constant_;
}

Jet& Jet::operator+=(const Jet& o) {
  if (!o.shape_) {
    if (shape_) coeffs_[0] += o.constant_;
    else constant_ += o.constant_;
    return *this;
  }
  adopt(o.shape_);
  if (shape_ != o.shape_ && shape_->size() != o.shape_->size())
    throw std::invalid_argument("jet shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (!o.shape_) {
    if (shape_) coeffs_[0] -= o.constant_;
    else constant_ -= o.constant_;
    return *this;
  }
  adopt(o.shape_);
  if (shape_ != o.shape_ && shape_->size() != o.shape_->size())
    throw std::invalid_argument("jet shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  if (shape_) {
    for (double& c : coeffs_) c *= s;
  } else {
    constant_ *= s;
  }
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (!a.shape_) return b * a.constant_;
  if (!b.shape_) return a * b.constant_;
  if (a.shape_ != b.shape_ && a.shape_->size() != b.shape_->size())
    throw std::invalid_argument("jet shape mismatch");
  Jet out(a.shape_, 0.0);
  const JetShape& shape = *a.shape_;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const double ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    for (std::size_t j : shape.partners(i)) out.coeffs_[i + j] += ai * b.coeffs_[j];
  }
  return out;
}

Jet operator-(const Jet& a) {
  Jet out = a;
  out *= -1.0;
  return out;
}

Jet pow(const Jet& x, int n) {
  if (n < 0) throw std::invalid_argument("jet pow needs a non-negative exponent");
  Jet result(1.0);
  Jet base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace modsplit
