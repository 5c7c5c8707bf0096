#pragma once

#include <string>
#include <vector>

#include "graphqa/graph.hpp"

namespace graphqa {

inline constexpr const char* kSepToken = "[SEP]";
inline constexpr const char* kClsToken = "[CLS]";
inline constexpr const char* kAnswerPrefix = "The answer is";

/// Removes self-loops and DFS back edges (roots visited in insertion
/// order, children in edge-insertion order). A DAG comes back unchanged.
DirectedGraph to_acyclic(const DirectedGraph& graph);

/// Topological order of the graph after to_acyclic: whenever several
/// nodes are ready, the earliest-inserted one is emitted first. The
/// result is always a permutation of the node ids.
std::vector<int> topo_sort(const DirectedGraph& graph);

struct TokenSpan {
  int start = -1;
  int end = -1;  // exclusive
  bool valid() const { return start >= 0 && end > start; }
  int length() const { return valid() ? end - start : 0; }
};

enum class UnitKind { concept_node, wiki_sentence };

struct AssembledUnit {
  UnitKind kind;
  int ordinal;       // index into the concept/wiki unit list it came from
  std::string text;
  TokenSpan span;    // invalid when the unit was truncated away
};

/// Encoder input: sorted concept units, sorted wiki units, [SEP],
/// question, [SEP], "The answer is" + choice, [CLS]. When the budget is
/// exceeded the evidence block is cut from its tail; the question and
/// choice are never touched.
struct LinearizedEvidence {
  std::vector<AssembledUnit> units;  // all input units in order, dropped ones keep an invalid span
  std::vector<std::string> tokens;
  int cls_position = -1;
};

/// Throws std::invalid_argument naming the required minimum when
/// max_len cannot hold the question, answer phrase, and markers.
LinearizedEvidence assemble_input(const std::vector<std::string>& concept_units,
                                  const std::vector<std::string>& wiki_units,
                                  const std::string& question,
                                  const std::string& choice,
                                  int max_len,
                                  bool wiki_first = false);

}  // namespace graphqa
