#pragma once

#include <set>
#include <string>
#include <vector>

#include "graphqa/graph.hpp"
#include "graphqa/text.hpp"
#include "graphqa/triple_store.hpp"

namespace graphqa {

/// Greedy longest-match of token n-grams against the store's entities.
/// Stopwords never match as standalone single-token entities, matched
/// spans do not overlap, output is deduplicated in text order.
std::vector<std::string> ground_concepts(const std::string& text, const TripleStore& store,
                                         const StopwordSet& stopwords);

struct ConceptPath {
  std::vector<int> triple_ids;  // consecutive triples share an entity
  std::string source;
  std::string target;
  int hops() const { return static_cast<int>(triple_ids.size()); }
};

/// Every simple path (no repeated entity) from a source to a target with
/// 1..max_hops edges, traversing triples in either direction. Ordered by
/// (source, target, lexicographic triple-id sequence). Zero-length paths
/// are excluded, so overlapping source/target sets alone yield nothing.
std::vector<ConceptPath> find_paths(const TripleStore& store,
                                    const std::set<std::string>& sources,
                                    const std::set<std::string>& targets,
                                    int max_hops);

/// Renders a triple through its relation template. Unknown relations fall
/// back to "<head> <relation camel-case split, lowercased> <tail>".
std::string verbalize(const Triple& triple, const TripleStore& store);

/// One node per distinct triple in first-appearance order; an edge from
/// the earlier to the later node of every pair sharing an entity.
EvidenceGraph build_concept_graph(const std::vector<ConceptPath>& paths,
                                  const TripleStore& store);

}  // namespace graphqa
