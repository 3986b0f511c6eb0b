#include "modsplit/coefficients.hpp"

#include <algorithm>
#include <set>

namespace modsplit {
namespace {

DerivativeWord w(std::string_view name) { return DerivativeWord::parse(name); }

std::vector<CorrectionTerm> build_potential() {
  return {
      {2, {1, 24}, w("Dg")},
      {4, {1, 480}, w("DgDg")},
      {6, {17, 161280}, w("DgDgDg")},
      {6, {-10, 161280}, DerivativeWord::dbar3()},
  };
}

std::vector<CorrectionTerm> build_kinetic() {
  return {
      {2, {-1, 12}, w("DpDp")},

      {4, {1, 720}, w("DpDpDpDp")},
      {4, {-9, 720}, w("DgDpDp")},
      {4, {3, 720}, w("DpDgDp")},

      {6, {-2, 60480}, w("DpDpDpDpDpDp")},
      {6, {40, 60480}, w("DgDpDpDpDp")},
      {6, {-46, 60480}, w("DpDgDpDpDp")},
      {6, {15, 60480}, w("DpDpDgDpDp")},
      {6, {-54, 60480}, w("DgDgDpDp")},
      {6, {9, 60480}, w("DgDpDgDp")},
      {6, {42, 60480}, w("DpDgDgDp")},
      {6, {-12, 60480}, w("DpDpDgDg")},
  };
}

std::vector<CorrectionTerm> build_generating() {
  return {
      {3, {-1, 12}, w("DpDp")},

      {4, {-1, 24}, w("DpDpDp")},

      {5, {-3, 240}, w("DpDpDpDp")},
      {5, {-3, 240}, w("DgDpDp")},
      {5, {1, 240}, w("DpDgDp")},

      {6, {-2, 720}, w("DpDpDpDpDp")},
      {6, {-8, 720}, w("DgDpDpDp")},
      {6, {5, 720}, w("DpDgDpDp")},

      {7, {-10, 20160}, w("DpDpDpDpDpDp")},
      {7, {-10, 20160}, w("DgDpDpDpDp")},
      {7, {-90, 20160}, w("DpDgDpDpDp")},
      {7, {75, 20160}, w("DpDpDgDpDp")},
      {7, {-18, 20160}, w("DgDgDpDp")},
      {7, {3, 20160}, w("DgDpDgDp")},
      {7, {14, 20160}, w("DpDgDgDp")},
      {7, {-4, 20160}, w("DpDpDgDg")},

      {8, {-3, 40320}, w("DpDpDpDpDpDpDp")},
      {8, {87, 40320}, w("DgDpDpDpDpDp")},
      {8, {-231, 40320}, w("DpDgDpDpDpDp")},
      {8, {133, 40320}, w("DpDpDgDpDpDp")},
      {8, {-63, 40320}, w("DgDgDpDpDp")},
      {8, {3, 40320}, w("DpDgDgDpDp")},
      {8, {21, 40320}, w("DpDpDgDgDp")},
      {8, {-4, 40320}, w("DpDpDpDgDg")},
      {8, {63, 40320}, w("DgDpDgDpDp")},
      {8, {-25, 40320}, w("DpDgDpDgDp")},
  };
}

}  // namespace

const std::vector<CorrectionTerm>& potential_correction_terms() {
  static const auto terms = build_potential();
  return terms;
}

const std::vector<CorrectionTerm>& kinetic_correction_terms() {
  static const auto terms = build_kinetic();
  return terms;
}

const std::vector<CorrectionTerm>& generating_correction_terms() {
  static const auto terms = build_generating();
  return terms;
}

int potential_truncation(int order) {
  if (!is_supported_order(order)) throw ConfigError("unsupported scheme order " + std::to_string(order));
  return order - 2;
}

int generating_truncation(int order) {
  if (!is_supported_order(order)) throw ConfigError("unsupported scheme order " + std::to_string(order));
  return order == 2 ? 0 : order;
}

EffectiveCoefficients EffectiveCoefficients::for_order(int order) {
  EffectiveCoefficients c;
  c.order = order;
  const int vmax = potential_truncation(order);
  const int gmax = generating_truncation(order);
  for (const auto& t : potential_correction_terms())
    if (t.tau_power <= vmax) c.potential.push_back(t);
  for (const auto& t : generating_correction_terms())
    if (t.tau_power <= gmax) c.generating.push_back(t);
  return c;
}

std::vector<DerivativeWord> required_words(int order) {
  const auto c = EffectiveCoefficients::for_order(order);
  std::set<DerivativeWord> words;
  for (const auto& t : c.potential) words.insert(t.word);
  for (const auto& t : c.generating) words.insert(t.word);
  return {words.begin(), words.end()};
}

}  // namespace modsplit
