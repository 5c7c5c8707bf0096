#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "graphqa/concept.hpp"
#include "graphqa/linearize.hpp"

using namespace graphqa;

namespace {

std::uint64_t mix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

StopwordSet test_stopwords() {
  std::istringstream in("the\nand\nof\na\nis\nwhen\nwhat\nthey\nto\ndo\ncan\nfeel\nor\n");
  return StopwordSet::from_stream(in);
}

TripleStore store_from(const std::string& tsv) {
  std::istringstream in(tsv);
  return parse_triple_dump(in, nullptr);
}

TripleStore fixture_store() {
  auto store = parse_triple_dump_file(GRAPHQA_FIXTURE_DIR "/triples.tsv", nullptr);
  load_relation_templates_file(GRAPHQA_DATA_DIR "/relation_templates.tsv", store);
  return store;
}

// Grounding oracle: enumerate every n-gram/entity match by brute force,
// then keep maximal non-overlapping ones scanning left to right.
std::vector<std::string> brute_force_ground(const std::string& text, const TripleStore& store,
                                            const StopwordSet& stopwords) {
  const auto tokens = tokenize(text, stopwords);
  const std::size_t n = tokens.size();
  // matches[pos] = lengths of entity matches starting at pos.
  std::vector<std::vector<std::size_t>> matches(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    for (std::size_t len = 1; pos + len <= n; ++len) {
      if (len == 1 && tokens[pos].is_stopword) continue;
      std::string candidate;
      for (std::size_t j = 0; j < len; ++j) {
        if (j) candidate += ' ';
        candidate += tokens[pos + j].text;
      }
      if (store.has_entity(candidate)) matches[pos].push_back(len);
    }
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::size_t pos = 0;
  while (pos < n) {
    if (matches[pos].empty()) {
      ++pos;
      continue;
    }
    const std::size_t len = *std::max_element(matches[pos].begin(), matches[pos].end());
    std::string entity;
    for (std::size_t j = 0; j < len; ++j) {
      if (j) entity += ' ';
      entity += tokens[pos + j].text;
    }
    if (seen.insert(entity).second) out.push_back(entity);
    pos += len;
  }
  return out;
}

// Path oracle: exhaustive DFS over the raw triple list, no adjacency index.
std::vector<ConceptPath> brute_force_paths(const TripleStore& store,
                                           const std::set<std::string>& sources,
                                           const std::set<std::string>& targets, int max_hops) {
  std::vector<ConceptPath> out;
  if (max_hops < 1) return out;

  std::vector<int> stack;
  std::set<std::string> visited;
  std::function<void(const std::string&, const std::string&)> walk =
      [&](const std::string& source, const std::string& at) {
        for (std::size_t id = 0; id < store.triples.size(); ++id) {
          const Triple& t = store.triples[id];
          std::string next;
          if (t.head == at && !visited.count(t.tail) && t.tail != at)
            next = t.tail;
          else if (t.tail == at && !visited.count(t.head) && t.head != at)
            next = t.head;
          else
            continue;
          stack.push_back(static_cast<int>(id));
          if (targets.count(next)) out.push_back(ConceptPath{stack, source, next});
          if (static_cast<int>(stack.size()) < max_hops) {
            visited.insert(next);
            walk(source, next);
            visited.erase(next);
          }
          stack.pop_back();
        }
      };

  for (const auto& source : sources) {
    if (!store.has_entity(source)) continue;
    visited = {source};
    stack.clear();
    walk(source, source);
  }
  std::sort(out.begin(), out.end(), [](const ConceptPath& a, const ConceptPath& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return a.triple_ids < b.triple_ids;
  });
  return out;
}

bool same_paths(const std::vector<ConceptPath>& a, const std::vector<ConceptPath>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].source != b[i].source || a[i].target != b[i].target ||
        a[i].triple_ids != b[i].triple_ids)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ground_concepts: no shared tokens means no concepts") {
  const auto store = store_from("guitar\tIsA\tinstrument\t1.0\n");
  CHECK(ground_concepts("completely unrelated words", store, test_stopwords()).empty());
  CHECK(ground_concepts("", store, test_stopwords()).empty());
}

TEST_CASE("ground_concepts: longest match wins over its prefix") {
  const auto store = store_from(
      "playing guitar\tHasPrerequisite\tguitar\t1.0\n"
      "music\tRelatedTo\tguitar\t1.0\n");
  const auto grounded = ground_concepts("he loves playing guitar loudly", store, test_stopwords());
  REQUIRE(grounded.size() == 1);
  CHECK(grounded[0] == "playing guitar");
}

TEST_CASE("ground_concepts: multiple disjoint matches in text order") {
  const auto store = store_from("mammals\tHasA\thair\t1.0\n");
  const auto grounded = ground_concepts("Do mammals have hair?", store, test_stopwords());
  CHECK(grounded == std::vector<std::string>{"mammals", "hair"});
}

TEST_CASE("ground_concepts: stopwords never match as single-token entities") {
  const auto store = store_from(
      "is\tRelatedTo\tbeing\t1.0\n"
      "guitar\tIsA\tinstrument\t1.0\n");
  const auto grounded = ground_concepts("this is a guitar", store, test_stopwords());
  CHECK(grounded == std::vector<std::string>{"guitar"});
}

TEST_CASE("ground_concepts: repeated mention deduplicated") {
  const auto store = store_from("guitar\tIsA\tinstrument\t1.0\n");
  const auto grounded =
      ground_concepts("guitar solos need a guitar", store, test_stopwords());
  CHECK(grounded == std::vector<std::string>{"guitar"});
}

TEST_CASE("ground_concepts: agrees with the n-gram oracle on random inputs") {
  const auto stopwords = test_stopwords();
  static const char* words[] = {"guitar", "music",  "playing", "sound", "people",
                                "cry",    "eyes",   "hair",    "the",   "is",
                                "making", "mammal", "sad",     "sleep"};
  constexpr int n_words = static_cast<int>(sizeof(words) / sizeof(words[0]));

  std::uint64_t state = 11;
  for (int trial = 0; trial < 100; ++trial) {
    // Random store over 1- and 2-token entities.
    std::ostringstream tsv;
    const int n_triples = 1 + static_cast<int>(mix64(state) % 12);
    for (int i = 0; i < n_triples; ++i) {
      auto entity = [&]() {
        std::string e = words[mix64(state) % n_words];
        if (mix64(state) % 3 == 0) e += std::string(" ") + words[mix64(state) % n_words];
        return e;
      };
      tsv << entity() << "\tRelatedTo\t" << entity() << "\t1.0\n";
    }
    const auto store = store_from(tsv.str());

    // Random text over the same vocabulary.
    std::string text;
    const int len = 1 + static_cast<int>(mix64(state) % 12);
    for (int i = 0; i < len; ++i) {
      if (i) text += ' ';
      text += words[mix64(state) % n_words];
    }

    CHECK(ground_concepts(text, store, stopwords) ==
          brute_force_ground(text, store, stopwords));
  }
}

TEST_CASE("find_paths: one-hop path over a single triple") {
  const auto store = store_from("people\tCapableOf\tcry\t1.0\n");
  const auto paths = find_paths(store, {"people"}, {"cry"}, 2);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].triple_ids == std::vector<int>{0});
  CHECK(paths[0].source == "people");
  CHECK(paths[0].target == "cry");
  CHECK(paths[0].hops() == 1);
}

TEST_CASE("find_paths: traverses triples against their direction") {
  const auto store = store_from("cry\tRelatedTo\tpeople\t1.0\n");
  const auto paths = find_paths(store, {"people"}, {"cry"}, 2);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].triple_ids == std::vector<int>{0});
}

TEST_CASE("find_paths: overlapping sources and targets yield nothing by themselves") {
  const auto store = store_from("people\tHasA\teyes\t1.0\n");
  CHECK(find_paths(store, {"people"}, {"people"}, 2).empty());
}

TEST_CASE("find_paths: hop limit cuts long chains") {
  const auto store = store_from(
      "a\tRelatedTo\tb\t1.0\n"
      "b\tRelatedTo\tc\t1.0\n"
      "c\tRelatedTo\td\t1.0\n");
  CHECK(find_paths(store, {"a"}, {"d"}, 2).empty());
  const auto paths = find_paths(store, {"a"}, {"d"}, 3);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].triple_ids == std::vector<int>{0, 1, 2});
}

TEST_CASE("find_paths: star hub produces one path per spoke pair") {
  const auto store = store_from(
      "hub\tRelatedTo\tleft\t1.0\n"
      "hub\tRelatedTo\tright\t1.0\n"
      "hub\tRelatedTo\tmiddle\t1.0\n");
  const auto paths = find_paths(store, {"left"}, {"right", "middle"}, 2);
  REQUIRE(paths.size() == 2);
  // Sorted by target: middle before right.
  CHECK(paths[0].target == "middle");
  CHECK(paths[0].triple_ids == std::vector<int>{0, 2});
  CHECK(paths[1].target == "right");
  CHECK(paths[1].triple_ids == std::vector<int>{0, 1});
}

TEST_CASE("find_paths: simple paths never repeat an entity") {
  // Triangle a-b, b-c, c-a plus target d off b: a->b->d and a->c->b->d
  // are fine, but nothing may revisit a.
  const auto store = store_from(
      "a\tRelatedTo\tb\t1.0\n"
      "b\tRelatedTo\tc\t1.0\n"
      "c\tRelatedTo\ta\t1.0\n"
      "b\tRelatedTo\td\t1.0\n");
  const auto paths = find_paths(store, {"a"}, {"d"}, 3);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].triple_ids == std::vector<int>{0, 3});
  CHECK(paths[1].triple_ids == std::vector<int>{2, 1, 3});

  for (const auto& path : paths) {
    std::set<std::string> seen{path.source};
    std::string at = path.source;
    for (int id : path.triple_ids) {
      const auto& t = store.triples[static_cast<std::size_t>(id)];
      at = (t.head == at) ? t.tail : t.head;
      CHECK(seen.insert(at).second);
    }
    CHECK(at == path.target);
  }
}

TEST_CASE("find_paths: self-triples never extend a path") {
  const auto store = store_from(
      "a\tRelatedTo\ta\t1.0\n"
      "a\tRelatedTo\tb\t1.0\n");
  const auto paths = find_paths(store, {"a"}, {"b"}, 3);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].triple_ids == std::vector<int>{1});
}

TEST_CASE("find_paths: agrees with the exhaustive oracle on 60 random stores") {
  static const char* entities[] = {"e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"};
  constexpr int n_entities = static_cast<int>(sizeof(entities) / sizeof(entities[0]));

  std::uint64_t state = 99;
  for (int trial = 0; trial < 60; ++trial) {
    std::ostringstream tsv;
    const int n_triples = 1 + static_cast<int>(mix64(state) % 20);
    for (int i = 0; i < n_triples; ++i)
      tsv << entities[mix64(state) % n_entities] << "\tRelatedTo\t"
          << entities[mix64(state) % n_entities] << "\t1.0\n";
    const auto store = store_from(tsv.str());

    std::set<std::string> sources, targets;
    const int n_src = 1 + static_cast<int>(mix64(state) % 3);
    const int n_tgt = 1 + static_cast<int>(mix64(state) % 3);
    for (int i = 0; i < n_src; ++i) sources.insert(entities[mix64(state) % n_entities]);
    for (int i = 0; i < n_tgt; ++i) targets.insert(entities[mix64(state) % n_entities]);
    const int max_hops = 1 + static_cast<int>(mix64(state) % 3);

    const auto got = find_paths(store, sources, targets, max_hops);
    const auto want = brute_force_paths(store, sources, targets, max_hops);
    REQUIRE(same_paths(got, want));
    // Determinism.
    CHECK(same_paths(got, find_paths(store, sources, targets, max_hops)));
  }
}

TEST_CASE("verbalize: templates and camel-case fallback") {
  const auto store = fixture_store();
  CHECK(verbalize(Triple{"mammals", "HasA", "hair", 1.0}, store) == "mammals has hair");
  CHECK(verbalize(Triple{"eyes", "RelatedTo", "cry", 1.0}, store) == "eyes is related to cry");
  CHECK(verbalize(Triple{"cry", "IsA", "sound", 1.0}, store) == "cry is a kind of sound");
  CHECK(verbalize(Triple{"a", "FooBar", "b", 1.0}, store) == "a foo bar b");
}

TEST_CASE("build_concept_graph: single triple gives one node, no edges") {
  const auto store = fixture_store();
  const auto paths = find_paths(store, {"mammals"}, {"hair"}, 2);
  REQUIRE(paths.size() == 1);
  const auto graph = build_concept_graph(paths, store);
  REQUIRE(graph.node_count() == 1);
  CHECK(graph.nodes[0].text == "mammals has hair");
  CHECK(graph.nodes[0].origin == NodeOrigin::concept_triple);
  CHECK(graph.graph.edges().empty());
}

TEST_CASE("build_concept_graph: shared entity draws earlier-to-later edge") {
  const auto store = store_from(
      "people\tHasA\teyes\t1.0\n"
      "eyes\tRelatedTo\tcry\t1.0\n");
  const auto paths = find_paths(store, {"people"}, {"cry"}, 2);
  REQUIRE(paths.size() == 1);
  const auto graph = build_concept_graph(paths, store);
  REQUIRE(graph.node_count() == 2);
  CHECK(graph.graph.edges() == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("build_concept_graph: node per distinct triple across overlapping paths") {
  const auto store = store_from(
      "a\tRelatedTo\tb\t1.0\n"
      "b\tRelatedTo\tc\t1.0\n"
      "a\tRelatedTo\tc\t1.0\n");
  const auto paths = find_paths(store, {"a"}, {"c"}, 2);
  REQUIRE(paths.size() == 2);  // direct a-c and a-b-c
  const auto graph = build_concept_graph(paths, store);
  CHECK(graph.node_count() == 3);  // triples 0, 1, 2 deduplicated
  // Every pair of these triples shares an entity, so the DAG is complete.
  CHECK(graph.graph.edges().size() == 3);
}

TEST_CASE("build_concept_graph: disjoint triples stay unconnected") {
  const auto store = store_from(
      "a\tRelatedTo\tb\t1.0\n"
      "c\tRelatedTo\td\t1.0\n");
  std::vector<ConceptPath> paths{
      ConceptPath{{0}, "a", "b"},
      ConceptPath{{1}, "c", "d"},
  };
  const auto graph = build_concept_graph(paths, store);
  CHECK(graph.node_count() == 2);
  CHECK(graph.graph.edges().empty());
}

TEST_CASE("build_concept_graph: output is already acyclic") {
  const auto store = fixture_store();
  const auto paths = find_paths(store, {"people", "sad"}, {"cry", "sound"}, 2);
  const auto graph = build_concept_graph(paths, store);
  CHECK(to_acyclic(graph.graph).edges() == graph.graph.edges());
}

TEST_CASE("golden: six-triple chain graph sorts into the canonical sequence") {
  std::istringstream in(
      "people\tHasA\teyes\t1.0\n"
      "eyes\tRelatedTo\tcry\t1.0\n"
      "people\tCapableOf\tsinging\t1.0\n"
      "cry\tIsA\tsound\t1.0\n"
      "singing\tHasPrerequisite\tsound\t1.0\n"
      "sound\tRelatedTo\tplaying guitar\t1.0\n");
  auto store = parse_triple_dump(in, nullptr);
  load_relation_templates_file(GRAPHQA_DATA_DIR "/relation_templates.tsv", store);

  // One single-triple path per triple, in dump order.
  std::vector<ConceptPath> paths;
  for (int i = 0; i < 6; ++i) {
    const auto& t = store.triples[static_cast<std::size_t>(i)];
    paths.push_back(ConceptPath{{i}, t.head, t.tail});
  }
  const auto graph = build_concept_graph(paths, store);
  REQUIRE(graph.node_count() == 6);

  const auto order = topo_sort(graph.graph);
  std::vector<std::string> sequence;
  for (int node : order) sequence.push_back(graph.nodes[static_cast<std::size_t>(node)].text);

  const std::vector<std::string> expected{
      "people has eyes",
      "eyes is related to cry",
      "people can do singing",
      "cry is a kind of sound",
      "singing requires sound",
      "sound is related to playing guitar",
  };
  CHECK(sequence == expected);
}
