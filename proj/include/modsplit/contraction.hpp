#pragma once

// Fast-path word evaluation through derivative-tensor contraction trees.
//
// Expanding a word by the product rule turns it into a sum of trees. Each node
// is a derivative tensor of V whose order equals its number of legs; a leg is
// either contracted with u = M p or joined through M to a leg of a neighbouring
// node. For example Dg Dp Dp V = V_abc u^a u^b (M grad V)^c is one node with
// two u-legs joined to a first-derivative node.
//
// A model only has to supply the contraction of one derivative tensor with a
// list of vectors, which is O(dim) for short-range potentials. Word values and
// their q/p gradients then follow from message passing along tree edges.

#include "modsplit/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace modsplit {

struct ContractionTree {
  struct Node {
    int u_legs = 0;
    std::vector<int> neighbours;
  };
  std::vector<Node> nodes;

  int legs(std::size_t n) const { return nodes[n].u_legs + static_cast<int>(nodes[n].neighbours.size()); }
  /// Canonical string, equal for isomorphic trees.
  std::string canonical() const;
};

struct WeightedTree {
  double weight;
  ContractionTree tree;
};

/// Product-rule expansion of a word with isomorphic trees merged.
std::vector<WeightedTree> expand_word(const DerivativeWord& word);

/// Base for models that provide derivative-tensor contractions.
class ContractionModel : public HamiltonianModel {
 public:
  /// w_a = d_a d_{b1} ... d_{bm} V(q) dirs[0]^{b1} ... dirs[m-1]^{bm}, with m = dirs.size().
  /// Directions carry upper indices (already multiplied by M).
  virtual Vector contract(const Vector& q, std::span<const Vector* const> dirs) const = 0;

  double word_value(const DerivativeWord& w, const Vector& q, const Vector& p) const override;
  Vector word_grad_q(const DerivativeWord& w, const Vector& q, const Vector& p) const override;
  Vector word_grad_p(const DerivativeWord& w, const Vector& q, const Vector& p) const override;
  int max_word_order_supported() const override { return 8; }

 protected:
  /// Expands and caches every word used by the order-8 scheme. Call from derived constructors.
  void prepare_expansions();

 private:
  const std::vector<WeightedTree>& expansion(const DerivativeWord& w, std::vector<WeightedTree>& scratch) const;

  std::map<DerivativeWord, std::vector<WeightedTree>> expansions_;
};

}  // namespace modsplit
