#pragma once

// Generic evaluation of derivative words for any model that can evaluate its
// potential over Jets. This is the slow reference route every fast path is
// checked against.
//
// A word is evaluated by perturbing the base point one operator at a time,
// outermost (leftmost) first:
//   a run of k Dp letters adds e*u with u = M p and reads k! [e^k],
//   a Dg letter adds e*X(point) with X = M grad V at the current (already
//   perturbed) point and reads [e^1].
// grad V at a jet point is obtained by one-coordinate sweeps of V. Cost is
// O(dim) potential evaluations per Dg letter, times dim for a gradient.

#include "modsplit/core.hpp"
#include "modsplit/jet.hpp"

#include <functional>

namespace modsplit {

using JetPotential = std::function<Jet(std::span<const Jet>)>;

/// Entry k is (d/de)^k V(q + e u) at e = 0, for k = 0..k_max (k_max <= 8).
std::vector<double> directional_derivs(const JetPotential& potential, const Vector& q, const Vector& u, int k_max);
std::vector<double> directional_derivs(const HamiltonianModel& model, const Vector& q, const Vector& u, int k_max);

double word_value_generic(const HamiltonianModel& model, const DerivativeWord& word, const Vector& q, const Vector& p);
Vector word_grad_q_generic(const HamiltonianModel& model, const DerivativeWord& word, const Vector& q, const Vector& p);
Vector word_grad_p_generic(const HamiltonianModel& model, const DerivativeWord& word, const Vector& q, const Vector& p);

}  // namespace modsplit
