#include "modsplit/core.hpp"

#include <algorithm>
#include <cmath>

namespace modsplit {

PhaseState::PhaseState(Vector q, Vector p) : q_(std::move(q)), p_(std::move(p)) {
  if (q_.size() != p_.size()) throw ConfigError("phase state: q and p differ in length");
  if (q_.size() < 1) throw ConfigError("phase state: dimension must be at least 1");
  if (!q_.allFinite() || !p_.allFinite()) throw NumericalError("phase state: non-finite entry");
}

Vector PhaseState::stacked() const {
  Vector z(2 * q_.size());
  z << q_, p_;
  return z;
}

PhaseState PhaseState::from_stacked(const Vector& z) {
  if (z.size() % 2 != 0) throw ConfigError("phase state: stacked vector has odd length");
  const auto n = z.size() / 2;
  return PhaseState(z.head(n), z.tail(n));
}

ExtendedState::ExtendedState(ExtVector q, ExtVector p) : q_(std::move(q)), p_(std::move(p)) {
  if (q_.size() != p_.size()) throw ConfigError("phase state: q and p differ in length");
  if (q_.empty()) throw ConfigError("phase state: dimension must be at least 1");
}

ExtendedState::ExtendedState(const PhaseState& s) : q_(s.q().begin(), s.q().end()), p_(s.p().begin(), s.p().end()) {}

PhaseState ExtendedState::rounded() const {
  Vector q(static_cast<Eigen::Index>(dim())), p(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) {
    q[static_cast<Eigen::Index>(i)] = static_cast<double>(q_[i]);
    p[static_cast<Eigen::Index>(i)] = static_cast<double>(p_[i]);
  }
  return {std::move(q), std::move(p)};
}

double distance(const ExtendedState& a, const ExtendedState& b) {
  if (a.dim() != b.dim()) throw ConfigError("distance: state dimensions differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double dq = static_cast<double>(a.q()[i] - b.q()[i]);
    const double dp = static_cast<double>(a.p()[i] - b.p()[i]);
    sum += dq * dq + dp * dp;
  }
  return std::sqrt(sum);
}

MassStructure MassStructure::identity(std::size_t dim) {
  if (dim == 0) throw ConfigError("mass: dimension must be positive");
  return MassStructure(Kind::identity, dim);
}

MassStructure MassStructure::diagonal(Vector diag) {
  if (diag.size() == 0) throw ConfigError("mass: dimension must be positive");
  if (!diag.allFinite() || (diag.array() <= 0.0).any())
    throw ConfigError("mass: diagonal entries must be positive and finite");
  MassStructure m(Kind::diagonal, static_cast<std::size_t>(diag.size()));
  m.diag_ = std::move(diag);
  return m;
}

MassStructure MassStructure::dense(Matrix mat) {
  if (mat.rows() == 0 || mat.rows() != mat.cols()) throw ConfigError("mass: matrix must be square and non-empty");
  const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
  if ((mat - mat.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ConfigError("mass: matrix is not symmetric");
  Eigen::LLT<Matrix> llt(mat);
  if (llt.info() != Eigen::Success) throw ConfigError("mass: matrix is not positive definite");
  MassStructure m(Kind::dense, static_cast<std::size_t>(mat.rows()));
  m.dense_ = 0.5 * (mat + mat.transpose());
  return m;
}

Vector MassStructure::apply(const Vector& v) const {
  switch (kind_) {
    case Kind::identity:
      return v;
    case Kind::diagonal:
      return diag_.cwiseProduct(v);
    case Kind::dense:
      return dense_ * v;
  }
  return v;
}

Matrix MassStructure::to_matrix() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  switch (kind_) {
    case Kind::identity:
      return Matrix::Identity(n, n);
    case Kind::diagonal:
      return diag_.asDiagonal();
    case Kind::dense:
      return dense_;
  }
  return Matrix::Identity(n, n);
}

bool is_supported_order(int order) noexcept { return order == 2 || order == 4 || order == 6 || order == 8; }

void SchemeConfig::validate() const {
  if (!is_supported_order(order))
    throw ConfigError("scheme order must be one of 2, 4, 6, 8 (got " + std::to_string(order) + ")");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("timestep tau must be positive and finite");
  if (!(push_tol > 0.0)) throw ConfigError("push_tol must be positive");
  if (push_max_iter < 1) throw ConfigError("push_max_iter must be positive");
}

DerivativeWord::DerivativeWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ConfigError("derivative word must be non-empty");
  if (letters_.size() > max_length) throw ConfigError("derivative word longer than 7 letters");
}

DerivativeWord DerivativeWord::dbar3() {
  DerivativeWord w;
  w.dbar3_ = true;
  return w;
}

DerivativeWord DerivativeWord::parse(std::string_view text) {
  if (text == "Dbar3") return dbar3();
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto chunk = text.substr(i, 2);
    if (chunk == "Dp") letters.push_back(Letter::Dp);
    else if (chunk == "Dg") letters.push_back(Letter::Dg);
    else throw ConfigError("cannot parse derivative word '" + std::string(text) + "'");
    i += 2;
  }
  return DerivativeWord(std::move(letters));
}

int DerivativeWord::dp_count() const noexcept {
  return static_cast<int>(std::count(letters_.begin(), letters_.end(), Letter::Dp));
}

int DerivativeWord::dg_count() const noexcept {
  return dbar3_ ? 3 : static_cast<int>(std::count(letters_.begin(), letters_.end(), Letter::Dg));
}

std::string DerivativeWord::name() const {
  if (dbar3_) return "Dbar3";
  std::string s;
  for (Letter l : letters_) s += (l == Letter::Dp ? "Dp" : "Dg");
  return s;
}

ExtVector HamiltonianModel::grad_potential_extended(std::span<const ExtReal>) const {
  throw ConfigError("this model has no extended-precision gradient");
}

double HamiltonianModel::kinetic(const Vector& p) const { return 0.5 * p.dot(mass().apply(p)); }

double HamiltonianModel::hamiltonian(const PhaseState& s) const { return kinetic(s.p()) + potential(s.q()); }

}  // namespace modsplit
