#pragma once

// Shared domain types: phase points, mass structure, scheme configuration,
// derivative words and the Hamiltonian model interface.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modsplit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Wide scalar for carrying the state when errors fall below double roundoff.
#if defined(__SIZEOF_FLOAT128__)
using ExtReal = __float128;
#else
using ExtReal = long double;
#endif
using ExtVector = std::vector<ExtReal>;

class Jet;

/// Invalid input or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failure during numerical evaluation or integration (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Positions and momenta of one phase point. Always finite, equal lengths.
class PhaseState {
 public:
  PhaseState(Vector q, Vector p);

  const Vector& q() const noexcept { return q_; }
  const Vector& p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(q_.size()); }

  /// Stacked (q, p) vector of length 2*dim.
  Vector stacked() const;
  static PhaseState from_stacked(const Vector& z);

 private:
  Vector q_;
  Vector p_;
};

/// A phase point carried in ExtReal.
class ExtendedState {
 public:
  ExtendedState(ExtVector q, ExtVector p);
  explicit ExtendedState(const PhaseState& s);

  const ExtVector& q() const noexcept { return q_; }
  const ExtVector& p() const noexcept { return p_; }
  ExtVector& q() noexcept { return q_; }
  ExtVector& p() noexcept { return p_; }
  std::size_t dim() const noexcept { return q_.size(); }

  /// Nearest double-precision state.
  PhaseState rounded() const;

 private:
  ExtVector q_;
  ExtVector p_;
};

/// Euclidean phase-space distance, differences formed in ExtReal.
double distance(const ExtendedState& a, const ExtendedState& b);

/// The inverse mass matrix M used to raise indices, p^a = M^{ab} p_b.
class MassStructure {
 public:
  enum class Kind { identity, diagonal, dense };

  static MassStructure identity(std::size_t dim);
  static MassStructure diagonal(Vector diag);
  /// Throws ConfigError unless `m` is symmetric (1e-12 relative) and positive definite.
  static MassStructure dense(Matrix m);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }

  Vector apply(const Vector& v) const;
  Matrix to_matrix() const;

  /// M*v for vectors over any scalar that supports + and * with double.
  template <class S>
  std::vector<S> apply(std::span<const S> v) const {
    std::vector<S> out(v.begin(), v.end());
    if (kind_ == Kind::diagonal) {
      for (std::size_t i = 0; i < dim_; ++i) out[i] = v[i] * diag_[static_cast<Eigen::Index>(i)];
    } else if (kind_ == Kind::dense) {
      for (std::size_t i = 0; i < dim_; ++i) {
        S acc = v[0] * dense_(static_cast<Eigen::Index>(i), 0);
        for (std::size_t j = 1; j < dim_; ++j)
          acc = acc + v[j] * dense_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        out[i] = acc;
      }
    }
    return out;
  }

 private:
  MassStructure(Kind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  std::size_t dim_;
  Vector diag_;
  Matrix dense_;
};

struct SchemeConfig {
  int order = 2;
  double tau = 0.1;
  double push_tol = 1e-14;
  int push_max_iter = 25;

  /// Throws ConfigError on an unsupported order or non-positive tau/tolerances.
  void validate() const;
};

bool is_supported_order(int order) noexcept;

/// One letter of a derivative word.
///   Dp: the directional derivative p_a M^{ab} d_b along the momentum.
///   Dg: the gradient-direction derivative (d_a V) M^{ab} d_b.
enum class Letter : unsigned char { Dp, Dg };

/// A composition of Dp/Dg operators applied to V, read left to right with the
/// leftmost operator applied last. The special Dbar3 word is the contraction
/// of the third derivative tensor of V with three copies of M grad V.
class DerivativeWord {
 public:
  static constexpr std::size_t max_length = 7;

  DerivativeWord() = default;
  explicit DerivativeWord(std::vector<Letter> letters);
  static DerivativeWord dbar3();
  /// Parses "DpDgDp" style names and "Dbar3".
  static DerivativeWord parse(std::string_view text);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool is_dbar3() const noexcept { return dbar3_; }
  std::size_t size() const noexcept { return letters_.size(); }
  int dp_count() const noexcept;
  int dg_count() const noexcept;
  std::string name() const;

  friend bool operator==(const DerivativeWord&, const DerivativeWord&) = default;
  friend auto operator<=>(const DerivativeWord& a, const DerivativeWord& b) {
    if (a.dbar3_ != b.dbar3_) return a.dbar3_ <=> b.dbar3_;
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
  bool dbar3_ = false;
};

/// The words whose values or gradients the kick and move of `order` consume.
/// Sorted, nested across orders, empty for order 2.
std::vector<DerivativeWord> required_words(int order);

/// Separable Hamiltonian H = 1/2 p^T M p + V(q).
class HamiltonianModel {
 public:
  virtual ~HamiltonianModel() = default;

  virtual std::size_t dim() const = 0;
  virtual const MassStructure& mass() const = 0;

  virtual double potential(const Vector& q) const = 0;
  virtual Vector grad_potential(const Vector& q) const = 0;
  /// grad V in ExtReal. The default throws ConfigError.
  virtual ExtVector grad_potential_extended(std::span<const ExtReal> q) const;
  /// V evaluated over truncated Taylor arithmetic; used by the generic word oracle.
  virtual Jet potential(std::span<const Jet> q) const = 0;

  virtual double word_value(const DerivativeWord& w, const Vector& q, const Vector& p) const = 0;
  virtual Vector word_grad_q(const DerivativeWord& w, const Vector& q, const Vector& p) const = 0;
  virtual Vector word_grad_p(const DerivativeWord& w, const Vector& q, const Vector& p) const = 0;

  /// Highest scheme order whose required words this model can evaluate.
  virtual int max_word_order_supported() const = 0;

  double kinetic(const Vector& p) const;
  double hamiltonian(const PhaseState& s) const;
};

}  // namespace modsplit
