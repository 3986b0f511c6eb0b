#include "modsplit/coefficients.hpp"
#include "modsplit/derivop.hpp"
#include "modsplit/models.hpp"
#include "support.hpp"

#include <doctest.h>

#include <memory>

using namespace modsplit;

namespace {

struct Case {
  std::string label;
  std::shared_ptr<HamiltonianModel> model;
  double q_scale, p_scale;
};

std::vector<Case> builtin_models() {
  std::vector<Case> out;
  out.push_back({"harmonic", std::make_shared<QuadraticModel>(QuadraticModel::harmonic()), 1.0, 1.0});
  Matrix k(3, 3);
  k << 2.0, -0.7, 0.1, -0.7, 1.5, 0.3, 0.1, 0.3, 0.9;
  Matrix m(3, 3);
  m << 1.2, 0.2, 0.0, 0.2, 0.8, -0.1, 0.0, -0.1, 1.0;
  out.push_back({"quadratic dense", std::make_shared<QuadraticModel>(MassStructure::dense(m), k), 1.0, 1.0});
  out.push_back({"quartic", std::make_shared<QuarticOscillator>(), 1.2, 1.2});
  out.push_back({"fpu beta", std::make_shared<FPUChain>(FPUParams{9, 0.0, 0.0, 1.0, false}), 0.5, 1.0});
  out.push_back({"fpu alpha+beta onsite", std::make_shared<FPUChain>(FPUParams{9, 0.3, 0.7, 1.0, false}), 0.5, 1.0});
  out.push_back({"fpu periodic", std::make_shared<FPUChain>(FPUParams{6, 0.0, 0.4, 0.8, true}), 0.5, 1.0});
  return out;
}

struct Cubic {
  template <class S>
  S operator()(std::span<const S> q) const {
    return q[0] * q[0] * q[0] * (1.0 / 3.0) + q[0] * q[1] * 0.5;
  }
};

}  // namespace

TEST_CASE("fast-path words agree with the generic oracle on random states") {
  std::mt19937_64 rng(31415);
  const auto words = required_words(8);
  for (const auto& c : builtin_models()) {
    const auto n = static_cast<Eigen::Index>(c.model->dim());
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Vector q = testing::random_vector(rng, n, c.q_scale), p = testing::random_vector(rng, n, c.p_scale);
      for (const auto& w : words) {
        const double ev = testing::rel_diff(c.model->word_value(w, q, p), word_value_generic(*c.model, w, q, p));
        const double eq = testing::rel_diff(c.model->word_grad_q(w, q, p), word_grad_q_generic(*c.model, w, q, p));
        const double ep = testing::rel_diff(c.model->word_grad_p(w, q, p), word_grad_p_generic(*c.model, w, q, p));
        worst = std::max({worst, ev, eq, ep});
        if (ev > 1e-11 || eq > 1e-11 || ep > 1e-11) {
          INFO(c.label << " word " << w.name() << " value " << ev << " grad_q " << eq << " grad_p " << ep);
          CHECK(false);
        }
      }
    }
    MESSAGE(c.label << ": worst relative mismatch " << worst);
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("potential gradients match finite differences") {
  std::mt19937_64 rng(8);
  for (const auto& c : builtin_models()) {
    const auto n = static_cast<Eigen::Index>(c.model->dim());
    for (int trial = 0; trial < 20; ++trial) {
      const Vector q = testing::random_vector(rng, n, c.q_scale);
      const Vector fd = testing::central_gradient([&](const Vector& x) { return c.model->potential(x); }, q, 1e-5);
      INFO(c.label);
      const Vector g = c.model->grad_potential(q);
      CHECK((g - fd).lpNorm<Eigen::Infinity>() <= 1e-6 * std::max(1.0, g.lpNorm<Eigen::Infinity>()));
    }
  }
}

TEST_CASE("extended-precision gradients agree with double gradients") {
  std::mt19937_64 rng(9);
  for (const auto& c : builtin_models()) {
    const auto n = static_cast<Eigen::Index>(c.model->dim());
    const Vector q = testing::random_vector(rng, n, c.q_scale);
    const ExtVector wide(q.begin(), q.end());
    const ExtVector g = c.model->grad_potential_extended(wide);
    Vector back(n);
    for (Eigen::Index i = 0; i < n; ++i) back[i] = static_cast<double>(g[static_cast<std::size_t>(i)]);
    INFO(c.label);
    CHECK(testing::rel_diff(back, c.model->grad_potential(q)) <= 1e-14);
  }
}

TEST_CASE("quartic closed forms") {
  const QuarticOscillator m;
  const Vector one = Vector::Constant(1, 1.0);
  CHECK(m.word_value(DerivativeWord::parse("DpDp"), one, one) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(m.word_value(DerivativeWord::parse("Dg"), one, one) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.word_value(DerivativeWord::dbar3(), one, one) == doctest::Approx(6.0).epsilon(1e-15));

  // A few more polynomial identities at a generic point.
  const double q = 0.8, p = -1.1;
  const Vector vq = Vector::Constant(1, q), vp = Vector::Constant(1, p);
  CHECK(m.word_value(DerivativeWord::parse("DpDpDp"), vq, vp) == doctest::Approx(6.0 * q * p * p * p).epsilon(1e-14));
  CHECK(m.word_value(DerivativeWord::parse("DpDpDpDp"), vq, vp) == doctest::Approx(6.0 * std::pow(p, 4)).epsilon(1e-14));
  CHECK(m.word_value(DerivativeWord::parse("DpDpDpDpDp"), vq, vp) == doctest::Approx(0.0));
  CHECK(m.word_value(DerivativeWord::parse("DgDg"), vq, vp) == doctest::Approx(6.0 * std::pow(q, 8)).epsilon(1e-14));
  CHECK(m.word_grad_q(DerivativeWord::parse("Dg"), vq, vp)[0] == doctest::Approx(6.0 * std::pow(q, 5)).epsilon(1e-14));
  CHECK(m.potential(vq) == doctest::Approx(0.25 * std::pow(q, 4)));
  CHECK(m.hamiltonian(PhaseState(vq, vp)) == doctest::Approx(0.5 * p * p + 0.25 * std::pow(q, 4)));
}

TEST_CASE("fpu chain without anharmonicity is the quadratic chain") {
  const FPUChain fpu({2, 0.0, 0.0, 0.0, false});
  Matrix k(2, 2);
  k << 1, -1, -1, 1;
  const QuadraticModel quad(MassStructure::identity(2), k);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector q = testing::random_vector(rng, 2), p = testing::random_vector(rng, 2);
    CHECK(fpu.potential(q) == doctest::Approx(quad.potential(q)).epsilon(1e-14));
    for (const auto& w : required_words(8)) {
      INFO(w.name());
      CHECK(testing::rel_diff(fpu.word_value(w, q, p), quad.word_value(w, q, p)) <= 1e-13);
      CHECK(testing::rel_diff(fpu.word_grad_q(w, q, p), quad.word_grad_q(w, q, p)) <= 1e-13);
      CHECK(testing::rel_diff(fpu.word_grad_p(w, q, p), quad.word_grad_p(w, q, p)) <= 1e-13);
    }
  }
}

TEST_CASE("fpu chain at equilibrium") {
  const FPUChain fpu({3, 0.0, 0.0, 1.0, false});
  std::mt19937_64 rng(4);
  const Vector p = testing::random_vector(rng, 3);
  CHECK(fpu.word_value(DerivativeWord::parse("Dg"), Vector::Zero(3), p) == 0.0);
  CHECK(fpu.grad_potential(Vector::Zero(3)).isZero(0.0));
}

TEST_CASE("fpu potential follows the open-chain sum") {
  const FPUParams params{4, 0.3, 0.5, 1.5, false};
  const FPUChain fpu(params);
  const Vector q = (Vector(4) << 0.1, -0.2, 0.4, 0.05).finished();
  double v = 0.0;
  for (int m = 0; m < 4; ++m) v += 0.5 * params.omega2 * q[m] * q[m];
  for (int m = 0; m + 1 < 4; ++m) {
    const double s = q[m + 1] - q[m];
    v += 0.5 * s * s + params.alpha / 3.0 * s * s * s + params.beta / 4.0 * s * s * s * s;
  }
  CHECK(fpu.potential(q) == doctest::Approx(v).epsilon(1e-15));

  const FPUChain ring({4, 0.3, 0.5, 1.5, true});
  const double s = q[0] - q[3];
  CHECK(ring.potential(q) ==
        doctest::Approx(v + 0.5 * s * s + 0.5 / 3.0 * s * s * s + 1.5 / 4.0 * s * s * s * s).epsilon(1e-15));
}

TEST_CASE("fpu word gradients are local") {
  const FPUChain fpu({15, 0.2, 0.5, 1.0, false});
  std::mt19937_64 rng(12);
  const Vector q = testing::random_vector(rng, 15, 0.5);
  const Eigen::Index site = 7;
  const Vector p = Vector::Unit(15, site);
  for (const auto& w : required_words(8)) {
    if (w.dp_count() == 0) continue;
    const Vector g = fpu.word_grad_q(w, q, p);
    const auto reach = static_cast<Eigen::Index>(w.size()) + 1;
    for (Eigen::Index j = 0; j < 15; ++j) {
      if (std::abs(j - site) <= reach) continue;
      INFO(w.name() << " site " << j);
      CHECK(g[j] == 0.0);
    }
  }
}

TEST_CASE("quadratic words beyond second derivatives vanish") {
  Matrix k(2, 2);
  k << 2, 0.5, 0.5, 1;
  const QuadraticModel quad(MassStructure::identity(2), k);
  std::mt19937_64 rng(6);
  const Vector q = testing::random_vector(rng, 2), p = testing::random_vector(rng, 2);
  CHECK(quad.word_value(DerivativeWord::dbar3(), q, p) == 0.0);
  CHECK(quad.word_value(DerivativeWord::parse("DpDpDp"), q, p) == 0.0);
  CHECK(quad.word_value(DerivativeWord::parse("DpDpDpDpDpDpDp"), q, p) == 0.0);
  CHECK(quad.word_grad_p(DerivativeWord::parse("Dg"), q, p).isZero(0.0));
  CHECK(quad.word_value(DerivativeWord::parse("DpDp"), q, p) == doctest::Approx(p.dot(k * p)).epsilon(1e-14));
  CHECK(quad.word_value(DerivativeWord::parse("Dg"), q, p) == doctest::Approx((k * q).squaredNorm()).epsilon(1e-14));
}

TEST_CASE("model construction is validated") {
  CHECK_THROWS_AS(FPUChain(FPUParams{1, 0.0, 0.0, 1.0, false}), ConfigError);
  CHECK_THROWS_AS(FPUChain(FPUParams{4, -1.0, 0.0, 1.0, false}), ConfigError);
  Matrix asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(QuadraticModel(MassStructure::identity(2), asym), ConfigError);
  CHECK_THROWS_AS(QuadraticModel(MassStructure::identity(3), Matrix::Identity(2, 2)), ConfigError);
}

TEST_CASE("fpu initial state hits the target energy") {
  const FPUChain fpu({9, 0.0, 0.0, 1.0, false});
  const PhaseState s = fpu_initial_state(fpu, 1.425);
  CHECK(s.q().isZero(0.0));
  CHECK(std::abs(fpu.hamiltonian(s) - 1.425) <= 1e-12);
  CHECK(std::abs(0.5 * s.p().squaredNorm() - 1.425) <= 1e-12);
  const PhaseState again = fpu_initial_state(fpu, 1.425);
  CHECK(again.p() == s.p());

  const PhaseState zero = fpu_initial_state(fpu, 0.0);
  CHECK(zero.q().isZero(0.0));
  CHECK(zero.p().isZero(0.0));
  CHECK_THROWS_AS(fpu_initial_state(fpu, -1.0), ConfigError);
  CHECK_THROWS_AS(fpu_initial_state(fpu, 1.0, 9), ConfigError);

  // Lowest mode of the free-end chain: no net momentum, antisymmetric profile.
  CHECK(std::abs(s.p().sum()) < 1e-14);
  for (int m = 0; m < 9; ++m) CHECK(s.p()[m] == doctest::Approx(-s.p()[8 - m]).epsilon(1e-12));
}

TEST_CASE("generic model wraps a templated potential") {
  const GenericModel<Cubic> m(MassStructure::identity(2), Cubic{});
  const Vector q = (Vector(2) << 0.4, -0.3).finished();
  CHECK(m.potential(q) == doctest::Approx(0.4 * 0.4 * 0.4 / 3.0 - 0.06));
  CHECK(testing::rel_diff(m.grad_potential(q), (Vector(2) << 0.16 - 0.15, 0.2).finished()) < 1e-14);
  CHECK(m.max_word_order_supported() == 8);
  CHECK_THROWS_AS(m.grad_potential_extended(std::vector<ExtReal>(2)), ConfigError);
}
