#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "graphqa/triple_store.hpp"

using namespace graphqa;

TEST_CASE("parse_triple_dump: single well-formed line") {
  std::istringstream in("mammals\tHasA\thair\t1.0\n");
  ParseReport report;
  const auto store = parse_triple_dump(in, &report);
  REQUIRE(store.triples.size() == 1);
  CHECK(report.parsed == 1);
  CHECK(report.skipped == 0);
  const auto& t = store.triples[0];
  CHECK(t.head == "mammals");
  CHECK(t.relation == "HasA");
  CHECK(t.tail == "hair");
  CHECK(t.weight == doctest::Approx(1.0));
  CHECK(store.has_entity("mammals"));
  CHECK(store.has_entity("hair"));
  CHECK_FALSE(store.has_entity("HasA"));
}

TEST_CASE("parse_triple_dump: empty stream gives empty store") {
  std::istringstream in("");
  ParseReport report;
  const auto store = parse_triple_dump(in, &report);
  CHECK(store.triples.empty());
  CHECK(store.entities.empty());
  CHECK(report.parsed == 0);
}

TEST_CASE("parse_triple_dump: malformed lines are skipped with line numbers") {
  std::istringstream in(
      "people\tHasA\teyes\t1.0\n"
      "not a tab separated line\n"
      "eyes\tRelatedTo\tcry\t0.8\n");
  ParseReport report;
  const auto store = parse_triple_dump(in, &report);
  CHECK(store.triples.size() == 2);
  CHECK(report.parsed == 2);
  CHECK(report.skipped == 1);
  REQUIRE(report.errors.size() == 1);
  CHECK(report.errors[0].find("line 2") != std::string::npos);
}

TEST_CASE("parse_triple_dump: bad weight is reported, not fatal") {
  std::istringstream in(
      "a\tIsA\tb\tnot_a_number\n"
      "c\tIsA\td\t-1.0\n"
      "e\tIsA\tf\t1.0\n");
  ParseReport report;
  const auto store = parse_triple_dump(in, &report);
  CHECK(store.triples.size() == 1);
  CHECK(report.skipped == 2);
  REQUIRE(report.errors.size() == 2);
  CHECK(report.errors[0].find("line 1") != std::string::npos);
  CHECK(report.errors[1].find("line 2") != std::string::npos);
}

TEST_CASE("parse_triple_dump: wrong field count is skipped") {
  std::istringstream in("a\tIsA\tb\n");  // weight missing
  ParseReport report;
  const auto store = parse_triple_dump(in, &report);
  CHECK(store.triples.empty());
  CHECK(report.skipped == 1);
}

TEST_CASE("normalize_entity: lowercase, separators to spaces, collapsed whitespace") {
  CHECK(normalize_entity("Playing_Guitar") == "playing guitar");
  CHECK(normalize_entity("  Playing   Guitar  ") == "playing guitar");
  CHECK(normalize_entity("HAIR") == "hair");
  CHECK(normalize_entity("") == "");
}

TEST_CASE("store invariant: incident lists cover exactly the triples touching an entity") {
  std::istringstream in(
      "people\tHasA\teyes\t1.0\n"
      "eyes\tRelatedTo\tcry\t1.0\n"
      "people\tCapableOf\tsinging\t1.0\n"
      "cry\tIsA\tsound\t1.0\n");
  const auto store = parse_triple_dump(in, nullptr);
  REQUIRE(store.triples.size() == 4);

  // Reconstruct incidence by scanning all triples and compare.
  for (const auto& entity : store.entities) {
    std::vector<int> expected;
    for (std::size_t i = 0; i < store.triples.size(); ++i) {
      const auto& t = store.triples[i];
      if (t.head == entity || t.tail == entity) expected.push_back(static_cast<int>(i));
    }
    CHECK(store.incident(entity) == expected);
  }
  // Every head and tail is a known entity; unknown entities have no incidence.
  for (const auto& t : store.triples) {
    CHECK(store.has_entity(t.head));
    CHECK(store.has_entity(t.tail));
  }
  CHECK(store.incident("unknown entity").empty());
}

TEST_CASE("self-loop triple is listed once in incidence") {
  std::istringstream in("echo\tRelatedTo\techo\t1.0\n");
  const auto store = parse_triple_dump(in, nullptr);
  REQUIRE(store.triples.size() == 1);
  CHECK(store.incident("echo") == std::vector<int>{0});
}

TEST_CASE("entity names are normalized on ingest") {
  std::istringstream in("Playing_Guitar\tUsedFor\tMaking_Music\t1.0\n");
  const auto store = parse_triple_dump(in, nullptr);
  REQUIRE(store.triples.size() == 1);
  CHECK(store.triples[0].head == "playing guitar");
  CHECK(store.triples[0].tail == "making music");
  CHECK(store.has_entity("playing guitar"));
}

TEST_CASE("fixture dump loads fully") {
  ParseReport report;
  const auto store = parse_triple_dump_file(GRAPHQA_FIXTURE_DIR "/triples.tsv", &report);
  CHECK(store.triples.size() == 12);
  CHECK(report.skipped == 0);
  CHECK(store.has_entity("people"));
  CHECK(store.has_entity("playing guitar"));
}

TEST_CASE("relation templates: load and apply") {
  TripleStore store;
  std::istringstream in(
      "HasA\t{head} has {tail}\n"
      "RelatedTo\t{head} is related to {tail}\n");
  load_relation_templates(in, store);
  CHECK(store.templates.count("HasA") == 1);
  CHECK(store.templates.count("IsA") == 0);
  CHECK(store.templates.at("RelatedTo") == "{head} is related to {tail}");
}

TEST_CASE("relation templates: patterns without both placeholders are skipped") {
  TripleStore store;
  std::istringstream in(
      "HasA\t{head} has something\n"
      "IsA\tis a {tail}\n"
      "RelatedTo\t{head} is related to {tail}\n");
  ParseReport report;
  load_relation_templates(in, store, &report);
  CHECK(store.templates.size() == 1);
  CHECK(report.skipped == 2);
  REQUIRE(report.errors.size() == 2);
  CHECK(report.errors[0].find("line 1") != std::string::npos);
}

TEST_CASE("unreadable files raise") {
  CHECK_THROWS_AS(parse_triple_dump_file("/nonexistent/path.tsv", nullptr), std::runtime_error);
  TripleStore store;
  CHECK_THROWS_AS(load_relation_templates_file("/nonexistent/path.tsv", store), std::runtime_error);
}
