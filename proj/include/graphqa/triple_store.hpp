#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "graphqa/text.hpp"

namespace graphqa {

struct Triple {
  std::string head;
  std::string relation;
  std::string tail;
  double weight = 0.0;  // stored for completeness, unused downstream
};

/// Structured knowledge base: weighted (head, relation, tail) triples
/// plus per-relation verbalization templates. Immutable once parsed;
/// safe to query from many threads.
struct TripleStore {
  std::vector<Triple> triples;
  std::unordered_set<std::string> entities;
  std::map<std::string, std::string> templates;  // relation -> pattern with {head}/{tail}
  std::unordered_map<std::string, std::vector<int>> adjacency;  // entity -> incident triple ids

  bool has_entity(const std::string& e) const { return entities.count(e) > 0; }
  const std::vector<int>& incident(const std::string& e) const;
};

struct ParseReport {
  int parsed = 0;
  int skipped = 0;
  std::vector<std::string> errors;  // one message per malformed line
};

/// Entities are canonicalized to lowercase tokens joined by single spaces.
std::string normalize_entity(std::string_view raw);

/// Parses the tab-separated dump `head<TAB>relation<TAB>tail<TAB>weight`.
/// Malformed lines (wrong field count, empty head/tail, non-numeric or
/// negative weight) are counted and skipped with a line-numbered message.
TripleStore parse_triple_dump(std::istream& in, ParseReport* report = nullptr);
TripleStore parse_triple_dump_file(const std::string& path, ParseReport* report = nullptr);

/// Loads `relation<TAB>pattern` lines into store.templates. Patterns must
/// contain both {head} and {tail}.
void load_relation_templates(std::istream& in, TripleStore& store, ParseReport* report = nullptr);
void load_relation_templates_file(const std::string& path, TripleStore& store,
                                  ParseReport* report = nullptr);

}  // namespace graphqa
