#include "hrl/graph/reward_tree.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace hrl::graph {

namespace {

std::string at_line(int line) {
  return line > 0 ? "line " + std::to_string(line) + ": " : std::string();
}

double parse_value(const std::string& token, int line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw TreeError(at_line(line) + "cannot parse value '" + token + "'", line);
  }
  return value;
}

}  // namespace

RewardTree RewardTree::from_edges(const std::vector<Edge>& edges) {
  if (edges.empty()) {
    throw TreeError("reward tree is empty", 0);
  }
  RewardTree tree;
  std::unordered_map<std::string, std::size_t> index;
  tree.nodes_.reserve(edges.size());
  for (const auto& edge : edges) {
    if (edge.id.empty() || edge.id == "-") {
      throw TreeError(at_line(edge.line) + "invalid node id '" + edge.id + "'", edge.line);
    }
    if (!std::isfinite(edge.value)) {
      throw TreeError(at_line(edge.line) + "node '" + edge.id + "' has a non-finite value",
                      edge.line);
    }
    const auto [it, inserted] = index.emplace(edge.id, tree.nodes_.size());
    if (!inserted) {
      throw TreeError(at_line(edge.line) + "node '" + edge.id +
                          "' is declared twice (a node may have only one parent)",
                      edge.line);
    }
    tree.nodes_.push_back({edge.id, edge.value, {}});
  }

  std::optional<std::size_t> root;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& edge = edges[k];
    if (!edge.parent) {
      if (root) {
        throw TreeError(at_line(edge.line) + "second root '" + edge.id + "' (first was '" +
                            tree.nodes_[*root].id + "')",
                        edge.line);
      }
      root = k;
      continue;
    }
    const auto parent = index.find(*edge.parent);
    if (parent == index.end()) {
      throw TreeError(at_line(edge.line) + "node '" + edge.id + "' references unknown parent '" +
                          *edge.parent + "'",
                      edge.line);
    }
    if (parent->second == k) {
      throw TreeError(at_line(edge.line) + "node '" + edge.id + "' is its own parent", edge.line);
    }
    tree.nodes_[parent->second].children.push_back(k);
  }
  if (!root) {
    throw TreeError("reward tree has no root (a node whose parent is '-')", 0);
  }
  tree.root_ = *root;

  // With one root and one parent per node, anything unreachable from the root sits on a cycle.
  const auto order = tree.breadth_first_order();
  if (order.size() != tree.nodes_.size()) {
    std::vector<bool> seen(tree.nodes_.size(), false);
    for (const auto idx : order) {
      seen[idx] = true;
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
      if (!seen[k]) {
        throw TreeError(at_line(edges[k].line) + "node '" + edges[k].id +
                            "' is part of a cycle and not reachable from the root",
                        edges[k].line);
      }
    }
  }
  return tree;
}

RewardTree RewardTree::chain(double root_value, std::span<const double> values) {
  std::vector<Edge> edges;
  edges.push_back({"n0", std::nullopt, root_value, 0});
  for (std::size_t k = 0; k < values.size(); ++k) {
    edges.push_back({"n" + std::to_string(k + 1), "n" + std::to_string(k), values[k], 0});
  }
  return from_edges(edges);
}

RewardTree RewardTree::parse(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::istringstream fields(line);
    std::string id;
    if (!(fields >> id) || id.front() == '#') {
      continue;
    }
    std::string parent;
    std::string value;
    std::string extra;
    if (!(fields >> parent >> value) || (fields >> extra)) {
      throw TreeError(at_line(line_no) + "expected 'node_id parent_id value'", line_no);
    }
    Edge edge;
    edge.id = id;
    if (parent != "-") {
      edge.parent = parent;
    }
    edge.value = parse_value(value, line_no);
    edge.line = line_no;
    edges.push_back(std::move(edge));
  }
  return from_edges(edges);
}

RewardTree RewardTree::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw TreeError("cannot open reward tree file '" + path.string() + "'", 0);
  }
  return parse(in);
}

std::vector<std::size_t> RewardTree::breadth_first_order() const {
  std::vector<std::size_t> order;
  std::vector<bool> seen(nodes_.size(), false);
  order.push_back(root_);
  seen[root_] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto child : nodes_[order[head]].children) {
      if (!seen[child]) {
        seen[child] = true;
        order.push_back(child);
      }
    }
  }
  return order;
}

double evaluate(const RewardTree& tree) {
  const auto& nodes = tree.nodes();
  const auto order = tree.breadth_first_order();
  std::vector<double> subtree(nodes.size(), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& node = nodes[*it];
    double below = 1.0;
    for (const auto child : node.children) {
      below += subtree[child];
    }
    subtree[*it] = node.value * below;
  }
  return subtree[tree.root()];
}

std::vector<std::vector<double>> leaf_traces(const RewardTree& tree) {
  const auto& nodes = tree.nodes();
  std::vector<std::vector<double>> traces;
  std::vector<double> path;
  // (node, next child position) frames of an explicit depth-first walk.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{tree.root(), 0}};
  path.push_back(nodes[tree.root()].value);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& children = nodes[node].children;
    if (children.empty()) {
      traces.push_back(path);
    }
    if (next < children.size()) {
      const std::size_t child = children[next++];
      path.push_back(nodes[child].value);
      stack.emplace_back(child, 0);
    } else {
      stack.pop_back();
      path.pop_back();
    }
  }
  return traces;
}

}  // namespace hrl::graph
