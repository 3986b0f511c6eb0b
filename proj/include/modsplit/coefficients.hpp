#pragma once

// Exact rational coefficients of the modified splitting generators.
//
//   V_eff = V + tau^2 V2 + tau^4 V4 + tau^6 V6
//   T_eff = T + tau^2 T2 + tau^4 T4 + tau^6 T6
//   G     = q.P + tau (1/2) P.M.P + sum_{k>=3} tau^k G_k(q, P)
//
// Each correction is a linear combination of derivative words acting on V.
// Words inside G_k take the post-move momentum P as their Dp direction.

#include "modsplit/core.hpp"

#include <vector>

namespace modsplit {

struct Rational {
  long long num = 0;
  long long den = 1;
  constexpr double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

struct CorrectionTerm {
  int tau_power;
  Rational coeff;
  DerivativeWord word;
};

/// Terms of V2, V4, V6 (tau powers 2, 4, 6).
const std::vector<CorrectionTerm>& potential_correction_terms();
/// Terms of T2, T4, T6 (tau powers 2, 4, 6); Dp uses the pre-move momentum.
const std::vector<CorrectionTerm>& kinetic_correction_terms();
/// Terms of G3 ... G8 (tau powers 3 ... 8).
const std::vector<CorrectionTerm>& generating_correction_terms();

/// Highest tau power kept in V_eff for a scheme order (order - 2).
int potential_truncation(int order);
/// Highest k with G_k kept in the move generator: 0 for order 2, else the order.
int generating_truncation(int order);

/// The correction terms an order-N scheme uses, with coefficients as doubles.
struct EffectiveCoefficients {
  int order = 2;
  std::vector<CorrectionTerm> potential;
  std::vector<CorrectionTerm> generating;

  static EffectiveCoefficients for_order(int order);
};

}  // namespace modsplit
