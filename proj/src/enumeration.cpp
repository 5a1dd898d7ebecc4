#include "treecut/enumeration.hpp"

#include <functional>
#include <map>
#include <string>

#include "treecut/error.hpp"

namespace treecut {

namespace {

// Cost distribution: cost -> probability.
using CostLaw = std::map<Rational, Rational>;

// Every ordered forest with `total` vertices, as lists of tree codes.
void forests(int total, std::map<int, std::vector<std::string>>& trees_by_size,
             const std::function<void(const std::vector<std::string>&)>& emit,
             std::vector<std::string>& prefix) {
  if (total == 0) {
    emit(prefix);
    return;
  }
  for (int first = 1; first <= total; ++first) {
    for (const auto& code : trees_by_size[first]) {
      prefix.push_back(code);
      forests(total - first, trees_by_size, emit, prefix);
      prefix.pop_back();
    }
  }
}

std::vector<std::string> all_tree_codes(int n) {
  std::map<int, std::vector<std::string>> by_size;
  by_size[1] = {"()"};
  for (int m = 2; m <= n; ++m) {
    std::vector<std::string> prefix;
    forests(m - 1, by_size,
            [&](const std::vector<std::string>& forest) {
              std::string code = "(";
              for (const auto& c : forest) code += c;
              code += ")";
              by_size[m].push_back(std::move(code));
            },
            prefix);
  }
  return by_size[n];
}

int subtree_size(const RootedTree& t, int v) {
  int size = 1;
  for (int c : t.children[v]) size += subtree_size(t, c);
  return size;
}

// Copy of the subtree below v (v becomes the root), or of the tree without it.
RootedTree extract(const RootedTree& t, int cut, bool keep_below) {
  RootedTree out;
  std::function<void(int, int)> copy = [&](int v, int parent_label) {
    const int label = out.size();
    out.children.emplace_back();
    if (parent_label >= 0) out.children[parent_label].push_back(label);
    for (int c : t.children[v]) {
      if (!keep_below && c == cut) continue;
      copy(c, label);
    }
  };
  copy(keep_below ? cut : 0, -1);
  return out;
}

CostLaw convolve(const CostLaw& a, const CostLaw& b) {
  CostLaw out;
  for (const auto& [ca, pa] : a) {
    for (const auto& [cb, pb] : b) out[ca + cb] += pa * pb;
  }
  return out;
}

class Destroyer {
 public:
  Destroyer(Variant variant, const TollSpec& toll) : variant_(variant), toll_(toll) {}

  const CostLaw& law(const RootedTree& t) {
    const std::string key = t.encode();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    CostLaw result;
    const int n = t.size();
    if (n == 1) {
      result[toll_.exact_isolated_cost()] = 1;
    } else {
      const Rational edge_prob(1, n - 1);
      const Rational toll = toll_.exact_toll(n);
      for (int v = 1; v < n; ++v) {
        RootedTree root_part = extract(t, v, false);
        CostLaw after = law(root_part);
        if (variant_ == Variant::TwoSided) after = convolve(after, law(extract(t, v, true)));
        for (const auto& [cost, prob] : after) result[cost + toll] += prob * edge_prob;
      }
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

 private:
  Variant variant_;
  TollSpec toll_;
  std::map<std::string, CostLaw> memo_;
};

}  // namespace

std::vector<WeightedTree> enumerate_trees(const FamilySpec& spec, int n) {
  if (n < 1 || n > 12) throw OutOfRange("exhaustive enumeration supports 1 <= n <= 12");
  std::vector<Rational> phi(n);
  for (int k = 0; k < n; ++k) phi[k] = phi_coefficient(spec, static_cast<unsigned>(k));
  std::vector<WeightedTree> out;
  for (const auto& code : all_tree_codes(n)) {
    RootedTree t = RootedTree::decode(code);
    Rational w(1);
    for (const auto& kids : t.children) w *= phi[kids.size()];
    if (w != 0) out.push_back({std::move(t), w});
  }
  return out;
}

std::vector<Rational> exhaustive_moments(const FamilySpec& spec, Variant variant,
                                         const TollSpec& toll, int n, int s_max) {
  if (!toll.is_exact()) throw DomainError("exhaustive moments need a rational toll");
  Destroyer destroyer(variant, toll);
  Rational total_weight(0);
  std::vector<Rational> moments(s_max + 1, Rational(0));
  for (const auto& [tree, weight] : enumerate_trees(spec, n)) {
    total_weight += weight;
    for (const auto& [cost, prob] : destroyer.law(tree)) {
      Rational power(1);
      for (int s = 0; s <= s_max; ++s) {
        moments[s] += weight * prob * power;
        power *= cost;
      }
    }
  }
  for (auto& m : moments) m /= total_weight;
  return moments;
}

std::vector<Rational> exhaustive_first_cut_law(const FamilySpec& spec, int n) {
  if (n < 2) throw OutOfRange("first-cut law needs n >= 2");
  std::vector<Rational> law(n - 1, Rational(0));
  Rational total_weight(0);
  for (const auto& [tree, weight] : enumerate_trees(spec, n)) {
    total_weight += weight;
    for (int v = 1; v < n; ++v) {
      law[n - subtree_size(tree, v) - 1] += weight / (n - 1);
    }
  }
  for (auto& p : law) p /= total_weight;
  return law;
}

}  // namespace treecut
