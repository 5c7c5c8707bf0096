#include "graphqa/linearize.hpp"

#include <functional>
#include <queue>
#include <stdexcept>

#include "graphqa/text.hpp"

namespace graphqa {

DirectedGraph to_acyclic(const DirectedGraph& graph) {
  const int n = graph.node_count();
  enum class Color : char { white, gray, black };
  std::vector<Color> color(static_cast<std::size_t>(n), Color::white);
  std::set<std::pair<int, int>> removed;

  std::function<void(int)> dfs = [&](int u) {
    color[static_cast<std::size_t>(u)] = Color::gray;
    for (int v : graph.out(u)) {
      Color c = color[static_cast<std::size_t>(v)];
      if (c == Color::gray) {
        removed.insert({u, v});  // back edge (covers self-loops)
      } else if (c == Color::white) {
        dfs(v);
      }
    }
    color[static_cast<std::size_t>(u)] = Color::black;
  };
  for (int u = 0; u < n; ++u) {
    if (color[static_cast<std::size_t>(u)] == Color::white) dfs(u);
  }

  DirectedGraph dag(n);
  for (const auto& [from, to] : graph.edges()) {
    if (!removed.count({from, to})) dag.add_edge(from, to);
  }
  return dag;
}

std::vector<int> topo_sort(const DirectedGraph& graph) {
  const DirectedGraph dag = to_acyclic(graph);
  const int n = dag.node_count();

  std::vector<int> in_degree(static_cast<std::size_t>(n), 0);
  for (const auto& [from, to] : dag.edges()) ++in_degree[static_cast<std::size_t>(to)];

  // Min-heap on node id = insertion order, so ties always resolve to the
  // earliest-inserted ready node.
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int u = 0; u < n; ++u) {
    if (in_degree[static_cast<std::size_t>(u)] == 0) ready.push(u);
  }

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    int u = ready.top();
    ready.pop();
    order.push_back(u);
    for (int v : dag.out(u)) {
      if (--in_degree[static_cast<std::size_t>(v)] == 0) ready.push(v);
    }
  }
  return order;
}

LinearizedEvidence assemble_input(const std::vector<std::string>& concept_units,
                                  const std::vector<std::string>& wiki_units,
                                  const std::string& question,
                                  const std::string& choice,
                                  int max_len,
                                  bool wiki_first) {
  const std::vector<std::string> question_tokens = tokenize_plain(question);
  const std::vector<std::string> answer_tokens = tokenize_plain(
      std::string(kAnswerPrefix) + " " + choice);

  // Two [SEP] plus the trailing [CLS].
  const int fixed = static_cast<int>(question_tokens.size()) +
                    static_cast<int>(answer_tokens.size()) + 3;
  if (max_len < fixed) {
    throw std::invalid_argument("max_len " + std::to_string(max_len) +
                                " below required minimum " + std::to_string(fixed));
  }

  LinearizedEvidence out;
  int budget = max_len - fixed;

  auto append_units = [&](const std::vector<std::string>& texts, UnitKind kind) {
    for (std::size_t i = 0; i < texts.size(); ++i) {
      AssembledUnit unit{kind, static_cast<int>(i), texts[i], TokenSpan{}};
      std::vector<std::string> unit_tokens = tokenize_plain(texts[i]);
      int keep = std::min(budget, static_cast<int>(unit_tokens.size()));
      if (keep > 0) {
        unit.span.start = static_cast<int>(out.tokens.size());
        unit.span.end = unit.span.start + keep;
        out.tokens.insert(out.tokens.end(), unit_tokens.begin(), unit_tokens.begin() + keep);
        budget -= keep;
      }
      out.units.push_back(std::move(unit));
    }
  };
  if (wiki_first) {
    append_units(wiki_units, UnitKind::wiki_sentence);
    append_units(concept_units, UnitKind::concept_node);
  } else {
    append_units(concept_units, UnitKind::concept_node);
    append_units(wiki_units, UnitKind::wiki_sentence);
  }

  out.tokens.push_back(kSepToken);
  out.tokens.insert(out.tokens.end(), question_tokens.begin(), question_tokens.end());
  out.tokens.push_back(kSepToken);
  out.tokens.insert(out.tokens.end(), answer_tokens.begin(), answer_tokens.end());
  out.cls_position = static_cast<int>(out.tokens.size());
  out.tokens.push_back(kClsToken);
  return out;
}

}  // namespace graphqa
