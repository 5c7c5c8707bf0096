#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace graphqa {

/// Directed graph over nodes 0..n-1. Node ids double as insertion order;
/// edges keep their insertion order, duplicates are dropped.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(int node_count) : out_(static_cast<std::size_t>(node_count)) {}

  int node_count() const { return static_cast<int>(out_.size()); }
  int add_node() {
    out_.emplace_back();
    return node_count() - 1;
  }

  /// Returns false for duplicates. Self-loops are representable; the
  /// evidence-graph builders never create them and to_acyclic drops them.
  bool add_edge(int from, int to);
  bool has_edge(int from, int to) const { return edge_set_.count({from, to}) > 0; }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& out(int node) const { return out_.at(static_cast<std::size_t>(node)); }

 private:
  std::vector<std::vector<int>> out_;
  std::vector<std::pair<int, int>> edges_;
  std::set<std::pair<int, int>> edge_set_;
};

enum class NodeOrigin : std::uint8_t {
  concept_triple,
  wiki_argument,
  wiki_predicate,
};

struct EvidenceNode {
  std::string text;
  NodeOrigin origin = NodeOrigin::concept_triple;
  std::optional<int> source_sentence;
};

/// Shared evidence-graph shape for the concept and wiki builders: nodes
/// carry text spans, edges are directed, no self-loops or duplicates.
struct EvidenceGraph {
  std::vector<EvidenceNode> nodes;
  DirectedGraph graph;

  int node_count() const { return static_cast<int>(nodes.size()); }
  bool empty() const { return nodes.empty(); }
};

/// Sentence-level projection of a Wiki-Graph. Node ids are sentence ids.
struct SentenceGraph {
  std::vector<int> sentence_ids;                // first-appearance order
  std::vector<std::pair<int, int>> edges;       // directed, no self-loops
};

}  // namespace graphqa
