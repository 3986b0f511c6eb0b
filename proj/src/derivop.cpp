#include "modsplit/derivop.hpp"

#include <string>

namespace modsplit {
namespace {

constexpr int kMaxJetDegree = 8;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

struct Group {
  bool gradient_direction;  // Dg, otherwise a run of Dp
  int count;
};

std::vector<Group> group_letters(const DerivativeWord& word) {
  std::vector<Group> groups;
  for (Letter l : word.letters()) {
    if (l == Letter::Dp && !groups.empty() && !groups.back().gradient_direction) {
      ++groups.back().count;
    } else {
      groups.push_back({l == Letter::Dg, 1});
    }
  }
  return groups;
}

enum class Seed { none, q, p };

class WordEvaluator {
 public:
  WordEvaluator(const HamiltonianModel& model, const DerivativeWord& word)
      : model_(model), word_(word), groups_(group_letters(word)) {
    if (word.size() > DerivativeWord::max_length)
      throw ConfigError("word " + word.name() + " exceeds the supported jet degree");
    if (word.is_dbar3()) groups_ = {{true, 3}};
    std::vector<int> caps;
    for (const auto& g : groups_) caps.push_back(g.gradient_direction && !word.is_dbar3() ? 1 : g.count);
    delta_var_ = caps.size();
    caps.push_back(1);
    sigma_var_ = caps.size();
    caps.push_back(1);
    shape_ = make_jet_shape(std::move(caps));
  }

  /// Word value as a jet in the seed variable (coefficient 0: value, 1: derivative).
  Jet evaluate(const Vector& q, const Vector& p, Seed seed, std::size_t coord) const {
    const std::size_t n = model_.dim();
    if (static_cast<std::size_t>(q.size()) != n || static_cast<std::size_t>(p.size()) != n)
      throw ConfigError("word evaluation: state dimension does not match the model");

    std::vector<Jet> point(n), momentum(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      point[i] = (seed == Seed::q && i == coord) ? Jet::variable(shape_, delta_var_, q[ii]) : Jet(shape_, q[ii]);
      momentum[i] = (seed == Seed::p && i == coord) ? Jet::variable(shape_, delta_var_, p[ii]) : Jet(shape_, p[ii]);
    }
    const std::vector<Jet> u = model_.mass().apply(std::span<const Jet>(momentum));

    if (word_.is_dbar3()) {
      // Frozen direction: X = M grad V at the base point, third derivative along it.
      const auto x = raised_gradient(point);
      const Jet e = Jet::variable(shape_, 0, 0.0);
      for (std::size_t i = 0; i < n; ++i) point[i] += e * x[i];
    } else {
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        const Jet e = Jet::variable(shape_, g, 0.0);
        if (groups_[g].gradient_direction) {
          const auto x = raised_gradient(point);
          for (std::size_t i = 0; i < n; ++i) point[i] += e * x[i];
        } else {
          for (std::size_t i = 0; i < n; ++i) point[i] += e * u[i];
        }
      }
    }

    Jet result = model_.potential(std::span<const Jet>(point));
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const int k = groups_[g].count;
      result = result.slice(g, k) * factorial(k);
    }
    if (!result.all_finite())
      throw NumericalError("word " + word_.name() + " evaluated to a non-finite value");
    return result;
  }

  std::size_t delta_var() const noexcept { return delta_var_; }

 private:
  std::vector<Jet> raised_gradient(const std::vector<Jet>& point) const {
    const std::size_t n = point.size();
    std::vector<Jet> grad(n);
    const Jet sigma = Jet::variable(shape_, sigma_var_, 0.0);
    std::vector<Jet> probe = point;
    for (std::size_t a = 0; a < n; ++a) {
      probe[a] = point[a] + sigma;
      grad[a] = model_.potential(std::span<const Jet>(probe)).slice(sigma_var_, 1);
      probe[a] = point[a];
    }
    return model_.mass().apply(std::span<const Jet>(grad));
  }

  const HamiltonianModel& model_;
  const DerivativeWord& word_;
  std::vector<Group> groups_;
  std::size_t delta_var_ = 0;
  std::size_t sigma_var_ = 0;
  JetShapePtr shape_;
};

Vector seeded_gradient(const HamiltonianModel& model, const DerivativeWord& word, const Vector& q, const Vector& p,
                       Seed seed) {
  const WordEvaluator eval(model, word);
  Vector g(q.size());
  for (Eigen::Index a = 0; a < q.size(); ++a)
    g[a] = eval.evaluate(q, p, seed, static_cast<std::size_t>(a)).slice(eval.delta_var(), 1).constant_term();
  return g;
}

}  // namespace

std::vector<double> directional_derivs(const JetPotential& potential, const Vector& q, const Vector& u, int k_max) {
  if (k_max < 0 || k_max > kMaxJetDegree)
    throw ConfigError("directional_derivs: k_max must be in [0, 8], got " + std::to_string(k_max));
  if (q.size() != u.size()) throw ConfigError("directional_derivs: q and u differ in length");
  const auto shape = make_jet_shape({k_max});
  std::vector<Jet> point(static_cast<std::size_t>(q.size()));
  const Jet e = Jet::variable(shape, 0, 0.0);
  for (Eigen::Index i = 0; i < q.size(); ++i) point[static_cast<std::size_t>(i)] = Jet(shape, q[i]) + e * u[i];
  const Jet v = potential(std::span<const Jet>(point));
  if (!v.all_finite()) throw NumericalError("directional_derivs: potential is not finite along the ray");
  std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) out[static_cast<std::size_t>(k)] = v.slice(0, k).constant_term() * factorial(k);
  return out;
}

std::vector<double> directional_derivs(const HamiltonianModel& model, const Vector& q, const Vector& u, int k_max) {
  return directional_derivs([&model](std::span<const Jet> x) { return model.potential(x); }, q, u, k_max);
}

double word_value_generic(const HamiltonianModel& model, const DerivativeWord& word, const Vector& q,
                          const Vector& p) {
  return WordEvaluator(model, word).evaluate(q, p, Seed::none, 0).constant_term();
}

Vector word_grad_q_generic(const HamiltonianModel& model, const DerivativeWord& word, const Vector& q,
                           const Vector& p) {
  return seeded_gradient(model, word, q, p, Seed::q);
}

Vector word_grad_p_generic(const HamiltonianModel& model, const DerivativeWord& word, const Vector& q,
                           const Vector& p) {
  return seeded_gradient(model, word, q, p, Seed::p);
}

}  // namespace modsplit
