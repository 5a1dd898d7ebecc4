#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace treecut {

// Rooted ordered tree; vertex 0 is the root and children keep their order.
struct RootedTree {
  std::vector<std::vector<int>> children;

  int size() const { return static_cast<int>(children.size()); }
  std::vector<int> parents() const;  // parent of the root is -1

  // Balanced parentheses in preorder, e.g. "(()())" for a root with two leaves.
  std::string encode() const;
  static RootedTree decode(std::string_view code);

  static RootedTree single_vertex();
  static RootedTree from_parents(const std::vector<int>& parent);  // parent[root] = -1
};

}  // namespace treecut
