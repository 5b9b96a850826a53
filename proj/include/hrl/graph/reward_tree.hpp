#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hrl/errors.hpp"

namespace hrl::graph {

/// Structural or parse problem in a reward tree; `line()` is 0 when not tied to a file line.
class TreeError : public InputError {
 public:
  TreeError(const std::string& what, int line) : InputError(what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

struct RewardNode {
  std::string id;
  double value = 0.0;
  std::vector<std::size_t> children;  // indices into RewardTree::nodes(), in declaration order
};

/// Rooted tree of scalar nodes. Construction validates the structure, so every instance has
/// exactly one root, no cycles, one parent per non-root node and finite values.
class RewardTree {
 public:
  struct Edge {
    std::string id;
    std::optional<std::string> parent;  // nullopt for the root
    double value = 0.0;
    int line = 0;  // source line for diagnostics, 0 if none
  };

  static RewardTree from_edges(const std::vector<Edge>& edges);

  /// Root `root_value` with `values` hanging below it as a single path.
  static RewardTree chain(double root_value, std::span<const double> values);

  /// Line format `node_id parent_id value`, `-` as the root's parent; blank lines and lines
  /// starting with '#' are ignored.
  static RewardTree parse(std::istream& in);
  static RewardTree parse_file(const std::filesystem::path& path);

  [[nodiscard]] const std::vector<RewardNode>& nodes() const { return nodes_; }
  [[nodiscard]] std::size_t root() const { return root_; }

  /// Node indices ordered so that every parent precedes its children.
  [[nodiscard]] std::vector<std::size_t> breadth_first_order() const;

 private:
  std::vector<RewardNode> nodes_;
  std::size_t root_ = 0;
};

/// f(v) = value(v) * (1 + sum of f(c) over children c), evaluated at the root. Equal to the
/// sum over every node of the product of values on its root path.
double evaluate(const RewardTree& tree);

/// Root-to-leaf value arrays, one per leaf, leaves in depth-first child order.
std::vector<std::vector<double>> leaf_traces(const RewardTree& tree);

}  // namespace hrl::graph
