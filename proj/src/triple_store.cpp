#include "graphqa/triple_store.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphqa {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

void strip_eol(std::string& line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
}

bool parse_weight(const std::string& text, double& out) {
  std::istringstream ss(text);
  ss >> out;
  if (ss.fail()) return false;
  std::string rest;
  ss >> rest;
  return rest.empty();
}

}  // namespace

const std::vector<int>& TripleStore::incident(const std::string& e) const {
  static const std::vector<int> empty;
  auto it = adjacency.find(e);
  return it == adjacency.end() ? empty : it->second;
}

std::string normalize_entity(std::string_view raw) {
  return join_tokens(tokenize_plain(raw));
}

TripleStore parse_triple_dump(std::istream& in, ParseReport* report) {
  TripleStore store;
  ParseReport local;
  ParseReport& rep = report ? *report : local;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_eol(line);
    if (line.empty()) continue;

    auto fields = split_tabs(line);
    if (fields.size() != 4) {
      ++rep.skipped;
      rep.errors.push_back("line " + std::to_string(line_no) + ": expected 4 tab-separated fields, got " +
                           std::to_string(fields.size()));
      continue;
    }
    std::string head = normalize_entity(fields[0]);
    std::string tail = normalize_entity(fields[2]);
    if (head.empty() || tail.empty()) {
      ++rep.skipped;
      rep.errors.push_back("line " + std::to_string(line_no) + ": empty head or tail entity");
      continue;
    }
    double weight = 0.0;
    if (!parse_weight(fields[3], weight)) {
      ++rep.skipped;
      rep.errors.push_back("line " + std::to_string(line_no) + ": non-numeric weight '" + fields[3] + "'");
      continue;
    }
    if (weight < 0.0) {
      ++rep.skipped;
      rep.errors.push_back("line " + std::to_string(line_no) + ": negative weight");
      continue;
    }

    int id = static_cast<int>(store.triples.size());
    store.triples.push_back(Triple{head, fields[1], tail, weight});
    store.entities.insert(head);
    store.entities.insert(tail);
    store.adjacency[head].push_back(id);
    if (tail != head) store.adjacency[tail].push_back(id);
    ++rep.parsed;
  }
  return store;
}

TripleStore parse_triple_dump_file(const std::string& path, ParseReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open triple dump: " + path);
  return parse_triple_dump(in, report);
}

void load_relation_templates(std::istream& in, TripleStore& store, ParseReport* report) {
  ParseReport local;
  ParseReport& rep = report ? *report : local;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_eol(line);
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      ++rep.skipped;
      rep.errors.push_back("line " + std::to_string(line_no) + ": missing tab separator");
      continue;
    }
    std::string relation = line.substr(0, tab);
    std::string pattern = line.substr(tab + 1);
    if (pattern.find("{head}") == std::string::npos ||
        pattern.find("{tail}") == std::string::npos) {
      ++rep.skipped;
      rep.errors.push_back("line " + std::to_string(line_no) + ": pattern lacks {head} or {tail}");
      continue;
    }
    store.templates[relation] = pattern;
    ++rep.parsed;
  }
}

void load_relation_templates_file(const std::string& path, TripleStore& store, ParseReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open relation template file: " + path);
  load_relation_templates(in, store, report);
}

}  // namespace graphqa
