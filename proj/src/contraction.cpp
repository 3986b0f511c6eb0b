#include "modsplit/contraction.hpp"

#include "modsplit/coefficients.hpp"

#include <algorithm>
#include <optional>

namespace modsplit {
namespace {

std::string rooted_form(const ContractionTree& t, int node, int parent) {
  std::vector<std::string> children;
  for (int c : t.nodes[static_cast<std::size_t>(node)].neighbours)
    if (c != parent) children.push_back(rooted_form(t, c, node));
  std::sort(children.begin(), children.end());
  std::string s = "(" + std::to_string(t.nodes[static_cast<std::size_t>(node)].u_legs);
  for (const auto& c : children) s += c;
  return s + ")";
}

std::vector<int> tree_centers(const ContractionTree& t) {
  const int n = static_cast<int>(t.nodes.size());
  if (n <= 2) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<int> leaves;
  for (int i = 0; i < n; ++i) {
    degree[static_cast<std::size_t>(i)] = static_cast<int>(t.nodes[static_cast<std::size_t>(i)].neighbours.size());
    if (degree[static_cast<std::size_t>(i)] <= 1) leaves.push_back(i);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(leaves.size());
    std::vector<int> next;
    for (int leaf : leaves)
      for (int nb : t.nodes[static_cast<std::size_t>(leaf)].neighbours)
        if (--degree[static_cast<std::size_t>(nb)] == 1) next.push_back(nb);
    leaves = std::move(next);
  }
  return leaves;
}

class TreeEvaluator {
 public:
  TreeEvaluator(const ContractionModel& model, const ContractionTree& tree, const Vector& q, const Vector& u)
      : model_(model), tree_(tree), q_(q), u_(u), n_(tree.nodes.size()), raised_(n_ * n_) {}

  double value() {
    const auto& root = tree_.nodes[0];
    if (root.u_legs > 0) return u_.dot(node_tensor(0, 1));
    const int c = root.neighbours.front();
    return raised(c, 0).dot(message(0, c));
  }

  /// Node tensor with one extra free leg, after removing `skip_u` of its u-legs.
  Vector node_tensor(int node, int skip_u) {
    const auto& nd = tree_.nodes[static_cast<std::size_t>(node)];
    std::vector<const Vector*> dirs;
    for (int i = 0; i < nd.u_legs - skip_u; ++i) dirs.push_back(&u_);
    for (int c : nd.neighbours) dirs.push_back(&raised(c, node));
    return model_.contract(q_, dirs);
  }

 private:
  /// Lower-index vector sent from `from` towards `to`.
  Vector message(int from, int to) {
    const auto& nd = tree_.nodes[static_cast<std::size_t>(from)];
    std::vector<const Vector*> dirs;
    for (int i = 0; i < nd.u_legs; ++i) dirs.push_back(&u_);
    for (int c : nd.neighbours)
      if (c != to) dirs.push_back(&raised(c, from));
    return model_.contract(q_, dirs);
  }

  const Vector& raised(int from, int to) {
    auto& slot = raised_[static_cast<std::size_t>(from) * n_ + static_cast<std::size_t>(to)];
    if (!slot) slot = model_.mass().apply(message(from, to));
    return *slot;
  }

  const ContractionModel& model_;
  const ContractionTree& tree_;
  const Vector& q_;
  const Vector& u_;
  std::size_t n_;
  std::vector<std::optional<Vector>> raised_;
};

bool is_bare_potential(const ContractionTree& t) { return t.nodes.size() == 1 && t.nodes[0].u_legs == 0; }

}  // namespace

std::string ContractionTree::canonical() const {
  std::string best;
  for (int c : tree_centers(*this)) {
    auto s = rooted_form(*this, c, -1);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

std::vector<WeightedTree> expand_word(const DerivativeWord& word) {
  if (word.is_dbar3()) {
    ContractionTree t;
    t.nodes.resize(4);
    t.nodes[0].neighbours = {1, 2, 3};
    for (int i = 1; i <= 3; ++i) t.nodes[static_cast<std::size_t>(i)].neighbours = {0};
    return {{1.0, std::move(t)}};
  }

  std::vector<WeightedTree> terms{{1.0, ContractionTree{{ContractionTree::Node{}}}}};
  const auto& letters = word.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    std::vector<WeightedTree> next;
    std::map<std::string, std::size_t> index;
    for (const auto& term : terms) {
      for (std::size_t n = 0; n < term.tree.nodes.size(); ++n) {
        ContractionTree t = term.tree;
        if (*it == Letter::Dp) {
          ++t.nodes[n].u_legs;
        } else {
          const int fresh = static_cast<int>(t.nodes.size());
          t.nodes.push_back(ContractionTree::Node{0, {static_cast<int>(n)}});
          t.nodes[n].neighbours.push_back(fresh);
        }
        auto key = t.canonical();
        if (auto found = index.find(key); found != index.end()) {
          next[found->second].weight += term.weight;
        } else {
          index.emplace(std::move(key), next.size());
          next.push_back({term.weight, std::move(t)});
        }
      }
    }
    terms = std::move(next);
  }
  return terms;
}

void ContractionModel::prepare_expansions() {
  for (const auto& w : required_words(8)) expansions_.emplace(w, expand_word(w));
}

const std::vector<WeightedTree>& ContractionModel::expansion(const DerivativeWord& w,
                                                             std::vector<WeightedTree>& scratch) const {
  if (auto it = expansions_.find(w); it != expansions_.end()) return it->second;
  scratch = expand_word(w);
  return scratch;
}

double ContractionModel::word_value(const DerivativeWord& w, const Vector& q, const Vector& p) const {
  std::vector<WeightedTree> scratch;
  const Vector u = mass().apply(p);
  double total = 0.0;
  for (const auto& term : expansion(w, scratch)) {
    if (is_bare_potential(term.tree)) {
      total += term.weight * potential(q);
      continue;
    }
    TreeEvaluator eval(*this, term.tree, q, u);
    total += term.weight * eval.value();
  }
  return total;
}

Vector ContractionModel::word_grad_q(const DerivativeWord& w, const Vector& q, const Vector& p) const {
  std::vector<WeightedTree> scratch;
  const Vector u = mass().apply(p);
  Vector g = Vector::Zero(q.size());
  for (const auto& term : expansion(w, scratch)) {
    TreeEvaluator eval(*this, term.tree, q, u);
    for (std::size_t n = 0; n < term.tree.nodes.size(); ++n) g += term.weight * eval.node_tensor(static_cast<int>(n), 0);
  }
  return g;
}

Vector ContractionModel::word_grad_p(const DerivativeWord& w, const Vector& q, const Vector& p) const {
  std::vector<WeightedTree> scratch;
  const Vector u = mass().apply(p);
  Vector g = Vector::Zero(q.size());
  for (const auto& term : expansion(w, scratch)) {
    TreeEvaluator eval(*this, term.tree, q, u);
    for (std::size_t n = 0; n < term.tree.nodes.size(); ++n) {
      const int legs = term.tree.nodes[n].u_legs;
      if (legs > 0) g += (term.weight * legs) * eval.node_tensor(static_cast<int>(n), 1);
    }
  }
  return mass().apply(g);
}

}  // namespace modsplit
