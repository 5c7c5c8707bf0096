#include "graphqa/concept.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <unordered_set>

namespace graphqa {

std::vector<std::string> ground_concepts(const std::string& text, const TripleStore& store,
                                         const StopwordSet& stopwords) {
  const std::vector<Token> tokens = tokenize(text, stopwords);
  if (tokens.empty() || store.entities.empty()) return {};

  std::size_t max_entity_tokens = 1;
  for (const std::string& entity : store.entities) {
    max_entity_tokens = std::max(max_entity_tokens,
                                 static_cast<std::size_t>(std::count(entity.begin(), entity.end(), ' ') + 1));
  }

  std::vector<std::string> matches;
  std::unordered_set<std::string> seen;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    std::size_t longest = 0;
    std::string matched;
    std::size_t limit = std::min(max_entity_tokens, tokens.size() - pos);
    for (std::size_t n = limit; n >= 1; --n) {
      if (n == 1 && tokens[pos].is_stopword) continue;
      std::string candidate = tokens[pos].text;
      for (std::size_t j = 1; j < n; ++j) {
        candidate += ' ';
        candidate += tokens[pos + j].text;
      }
      if (store.has_entity(candidate)) {
        longest = n;
        matched = std::move(candidate);
        break;
      }
    }
    if (longest > 0) {
      if (seen.insert(matched).second) matches.push_back(matched);
      pos += longest;
    } else {
      ++pos;
    }
  }
  return matches;
}

namespace {

std::string other_endpoint(const Triple& t, const std::string& entity) {
  return t.head == entity ? t.tail : t.head;
}

}  // namespace

std::vector<ConceptPath> find_paths(const TripleStore& store,
                                    const std::set<std::string>& sources,
                                    const std::set<std::string>& targets,
                                    int max_hops) {
  std::vector<ConceptPath> paths;
  if (max_hops < 1) return paths;

  std::vector<int> triple_stack;
  std::unordered_set<std::string> visited;

  std::function<void(const std::string&, const std::string&)> dfs =
      [&](const std::string& source, const std::string& at) {
        for (int id : store.incident(at)) {
          const Triple& t = store.triples[static_cast<std::size_t>(id)];
          if (t.head == t.tail) continue;  // a self-triple can never extend a simple path
          const std::string next = other_endpoint(t, at);
          if (visited.count(next)) continue;
          triple_stack.push_back(id);
          if (targets.count(next)) {
            paths.push_back(ConceptPath{triple_stack, source, next});
          }
          if (static_cast<int>(triple_stack.size()) < max_hops) {
            visited.insert(next);
            dfs(source, next);
            visited.erase(next);
          }
          triple_stack.pop_back();
        }
      };

  for (const std::string& source : sources) {
    if (!store.has_entity(source)) continue;
    visited.clear();
    visited.insert(source);
    triple_stack.clear();
    dfs(source, source);
  }

  std::sort(paths.begin(), paths.end(), [](const ConceptPath& a, const ConceptPath& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return a.triple_ids < b.triple_ids;
  });
  return paths;
}

std::string verbalize(const Triple& triple, const TripleStore& store) {
  auto it = store.templates.find(triple.relation);
  if (it != store.templates.end()) {
    std::string text = it->second;
    auto replace_all = [&text](const std::string& slot, const std::string& value) {
      std::size_t pos = 0;
      while ((pos = text.find(slot, pos)) != std::string::npos) {
        text.replace(pos, slot.size(), value);
        pos += value.size();
      }
    };
    replace_all("{head}", triple.head);
    replace_all("{tail}", triple.tail);
    return text;
  }

  // Fallback: split the relation name at camel-case boundaries.
  std::string relation_words;
  for (std::size_t i = 0; i < triple.relation.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(triple.relation[i]);
    if (std::isupper(c) && i > 0) relation_words.push_back(' ');
    relation_words.push_back(static_cast<char>(std::tolower(c)));
  }
  return triple.head + " " + relation_words + " " + triple.tail;
}

EvidenceGraph build_concept_graph(const std::vector<ConceptPath>& paths,
                                  const TripleStore& store) {
  EvidenceGraph graph;
  std::map<int, int> node_of_triple;  // triple id -> node id
  std::vector<int> triple_of_node;

  for (const ConceptPath& path : paths) {
    for (int triple_id : path.triple_ids) {
      if (node_of_triple.count(triple_id)) continue;
      const Triple& t = store.triples.at(static_cast<std::size_t>(triple_id));
      node_of_triple[triple_id] = graph.graph.add_node();
      triple_of_node.push_back(triple_id);
      graph.nodes.push_back(EvidenceNode{verbalize(t, store), NodeOrigin::concept_triple, {}});
    }
  }

  // Shared entity between two triples => edge from the earlier node.
  const int n = graph.node_count();
  for (int i = 0; i < n; ++i) {
    const Triple& a = store.triples[static_cast<std::size_t>(triple_of_node[static_cast<std::size_t>(i)])];
    for (int j = i + 1; j < n; ++j) {
      const Triple& b = store.triples[static_cast<std::size_t>(triple_of_node[static_cast<std::size_t>(j)])];
      const bool shared = a.head == b.head || a.head == b.tail ||
                          a.tail == b.head || a.tail == b.tail;
      if (shared) graph.graph.add_edge(i, j);
    }
  }
  return graph;
}

}  // namespace graphqa
