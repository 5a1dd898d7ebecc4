#include <doctest.h>

#include <set>

#include "treecut/enumeration.hpp"
#include "treecut/error.hpp"
#include "treecut/tree.hpp"

using namespace treecut;

TEST_SUITE("trees") {
  TEST_CASE("encoding round trip") {
    const RootedTree t = RootedTree::decode("(()(()()))");
    CHECK(t.size() == 5);
    CHECK(t.encode() == "(()(()()))");
    CHECK(t.parents() == std::vector<int>{-1, 0, 0, 2, 2});
    CHECK(RootedTree::single_vertex().encode() == "()");
    CHECK_THROWS_AS(RootedTree::decode("(()"), ConfigError);
    CHECK_THROWS_AS(RootedTree::decode("()()"), ConfigError);
    const RootedTree p = RootedTree::from_parents({2, 2, -1, 1});
    CHECK(p.size() == 4);
    CHECK(p.parents()[0] == -1);
  }

  TEST_CASE("enumeration reproduces the counts") {
    for (const auto& spec : {ordered_trees(), cayley_trees(), binary_trees(),
                             make_family(FamilyKind::B, Rational(1), 3)}) {
      const WeightedCounts c = compute_counts(spec, 8);
      for (int n = 1; n <= 8; ++n) {
        Rational total = 0;
        std::set<std::string> codes;
        for (const auto& w : enumerate_trees(spec, n)) {
          CHECK(w.tree.size() == n);
          total += w.weight;
          codes.insert(w.tree.encode());
        }
        CHECK(total == c.exact[n]);
        CHECK(codes.size() == enumerate_trees(spec, n).size());
      }
    }
    CHECK(enumerate_trees(ordered_trees(), 4).size() == 5);
  }

  TEST_CASE("first-cut law from enumeration equals p_{n,k}") {
    for (const auto& spec : {ordered_trees(), cayley_trees(), binary_trees()}) {
      const WeightedCounts c = compute_counts(spec, 7);
      for (int n = 2; n <= 7; ++n) {
        const auto law = exhaustive_first_cut_law(spec, n);
        const SplitDistribution s = split_distribution(c, n);
        for (int k = 1; k < n; ++k) CHECK(law[k - 1] == (*s.exact)[k - 1]);
      }
    }
  }
}
