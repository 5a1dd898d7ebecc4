#include "treecut/tree.hpp"

#include <algorithm>

#include "treecut/error.hpp"

namespace treecut {

std::vector<int> RootedTree::parents() const {
  std::vector<int> parent(children.size(), -1);
  for (int v = 0; v < size(); ++v) {
    for (int c : children[v]) parent[c] = v;
  }
  return parent;
}

std::string RootedTree::encode() const {
  std::string out;
  out.reserve(2 * children.size());
  // Iterative preorder: (vertex, next child index).
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  out.push_back('(');
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children[v].size()) {
      int c = children[v][next++];
      out.push_back('(');
      stack.emplace_back(c, 0);
    } else {
      out.push_back(')');
      stack.pop_back();
    }
  }
  return out;
}

RootedTree RootedTree::decode(std::string_view code) {
  RootedTree tree;
  std::vector<int> stack;
  for (char ch : code) {
    if (ch == '(') {
      const int v = tree.size();
      tree.children.emplace_back();
      if (!stack.empty()) {
        tree.children[stack.back()].push_back(v);
      } else if (v != 0) {
        throw ConfigError("tree code has more than one root");
      }
      stack.push_back(v);
    } else if (ch == ')') {
      if (stack.empty()) throw ConfigError("unbalanced tree code");
      stack.pop_back();
    } else {
      throw ConfigError("tree code may only contain parentheses");
    }
  }
  if (!stack.empty() || tree.children.empty()) throw ConfigError("unbalanced tree code");
  return tree;
}

RootedTree RootedTree::single_vertex() {
  RootedTree tree;
  tree.children.emplace_back();
  return tree;
}

RootedTree RootedTree::from_parents(const std::vector<int>& parent) {
  const int n = static_cast<int>(parent.size());
  int root = -1;
  for (int v = 0; v < n; ++v) {
    if (parent[v] < 0) {
      if (root >= 0) throw ConfigError("parent array has two roots");
      root = v;
    }
  }
  if (root < 0) throw ConfigError("parent array has no root");
  std::vector<std::vector<int>> kids(n);
  for (int v = 0; v < n; ++v) {
    if (parent[v] >= 0) kids[parent[v]].push_back(v);
  }
  // Relabel in preorder so that the root becomes vertex 0.
  RootedTree tree;
  tree.children.resize(n);
  std::vector<int> label(n, -1);
  std::vector<int> order{root};
  int next = 0;
  label[root] = next++;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    for (int c : kids[v]) {
      label[c] = next++;
      order.push_back(c);
      tree.children[label[v]].push_back(label[c]);
    }
  }
  if (next != n) throw ConfigError("parent array is not a tree");
  return tree;
}

}  // namespace treecut
