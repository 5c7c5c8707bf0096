#include "graphqa/graph.hpp"

#include <stdexcept>

namespace graphqa {

bool DirectedGraph::add_edge(int from, int to) {
  if (from < 0 || from >= node_count() || to < 0 || to >= node_count()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (!edge_set_.insert({from, to}).second) return false;
  edges_.emplace_back(from, to);
  out_[static_cast<std::size_t>(from)].push_back(to);
  return true;
}

}  // namespace graphqa
