#pragma once

#include <vector>

#include "treecut/family.hpp"
#include "treecut/moments.hpp"
#include "treecut/rational.hpp"
#include "treecut/tree.hpp"

namespace treecut {

// Exhaustive reference computations for small trees. Nothing here uses the
// splitting probabilities: trees are listed with their weights
// w(T) = prod_v phi_{outdeg(v)}, and the cutting process is followed edge by
// edge on every tree.

struct WeightedTree {
  RootedTree tree;
  Rational weight;
};

// All ordered trees with n vertices and nonzero weight.
std::vector<WeightedTree> enumerate_trees(const FamilySpec& spec, int n);

// Exact moments E[V^s], s = 0..s_max, of the destruction cost of a random
// tree of size n, averaging over trees (by weight) and over every sequence of
// uniform edge cuts. Requires a rational toll.
std::vector<Rational> exhaustive_moments(const FamilySpec& spec, Variant variant,
                                         const TollSpec& toll, int n, int s_max);

// Exact law of the root-component size after the first cut, from enumeration:
// entry k - 1 holds P[K_n = k].
std::vector<Rational> exhaustive_first_cut_law(const FamilySpec& spec, int n);

}  // namespace treecut
