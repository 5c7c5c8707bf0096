#include "graphqa/wiki.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace graphqa {

namespace {

// Finite verb forms anchor predicate groups; bare -ing/-ed tokens extend
// them but cannot start a clause's predicate on their own (gerunds are
// too often nominal).
const std::unordered_set<std::string>& finite_verbs() {
  static const std::unordered_set<std::string> verbs{
      "is", "are", "was", "were", "am", "be", "been",
      "has", "have", "had", "do", "does", "did",
      "can", "could", "will", "would", "may", "might", "must", "shall", "should",
      "begin", "begins", "began", "start", "starts", "started",
      "make", "makes", "made", "get", "gets", "got",
      "go", "goes", "went", "come", "comes", "came",
      "take", "takes", "took", "give", "gives", "gave",
      "use", "uses", "used", "play", "plays", "played",
      "need", "needs", "needed", "want", "wants", "wanted",
      "like", "likes", "liked", "love", "loves", "loved",
      "require", "requires", "required", "become", "becomes", "became",
      "lay", "lays", "laid", "lie", "lies", "lives", "live", "lived",
      "say", "says", "said", "see", "sees", "saw",
      "know", "knows", "knew", "think", "thinks", "thought",
      "find", "finds", "found", "keep", "keeps", "kept",
      "hold", "holds", "held", "mean", "means", "meant",
      "emit", "emits", "emitted", "guide", "guides", "guided",
      "shine", "shines", "shone", "grow", "grows", "grew",
      "eat", "eats", "ate", "run", "runs", "ran",
      "contain", "contains", "contained", "produce", "produces", "produced",
  };
  return verbs;
}

const std::unordered_set<std::string>& clause_boundaries() {
  static const std::unordered_set<std::string> words{
      "when", "while", "because", "although", "though", "that", "which",
      "who", "whom", "whose", "where", "after", "before", "since", "if",
      "unless", "until", "whether",
  };
  return words;
}

bool verb_like(const std::string& token) {
  if (finite_verbs().count(token)) return true;
  if (token.size() >= 5 && token.compare(token.size() - 3, 3, "ing") == 0) return true;
  if (token.size() >= 4 && token.compare(token.size() - 2, 2, "ed") == 0) return true;
  return false;
}

std::string span_text(const Sentence& sentence, TokenSpan span) {
  std::string out;
  for (int i = span.start; i < span.end; ++i) {
    if (i > span.start) out.push_back(' ');
    out += sentence.tokens[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

std::vector<SrlTriple> PatternSrlAdapter::extract(const Sentence& sentence) {
  const auto& tokens = sentence.tokens;
  std::vector<SrlTriple> triples;

  std::vector<std::pair<int, int>> clauses;
  int clause_start = 0;
  for (int i = 0; i <= static_cast<int>(tokens.size()); ++i) {
    const bool boundary = i == static_cast<int>(tokens.size()) ||
                          clause_boundaries().count(tokens[static_cast<std::size_t>(i)]) > 0;
    if (boundary) {
      if (i > clause_start) clauses.emplace_back(clause_start, i);
      clause_start = i + 1;
    }
  }

  for (auto [begin, end] : clauses) {
    // Group consecutive verb-like tokens; the predicate is the first group
    // anchored by a finite verb.
    TokenSpan predicate;
    int i = begin;
    while (i < end) {
      if (!verb_like(tokens[static_cast<std::size_t>(i)])) {
        ++i;
        continue;
      }
      int group_end = i;
      bool anchored = false;
      while (group_end < end && verb_like(tokens[static_cast<std::size_t>(group_end)])) {
        anchored = anchored || finite_verbs().count(tokens[static_cast<std::size_t>(group_end)]) > 0;
        ++group_end;
      }
      if (anchored) {
        predicate = TokenSpan{i, group_end};
        break;
      }
      i = group_end;
    }
    if (!predicate.valid()) continue;

    TokenSpan subject{begin, predicate.start};
    TokenSpan object{predicate.end, end};
    if (!subject.valid() || !object.valid()) continue;

    SrlTriple triple;
    triple.sentence_id = sentence.id;
    triple.subject = subject;
    triple.predicate = predicate;
    triple.object = object;
    triple.subject_text = span_text(sentence, subject);
    triple.predicate_text = span_text(sentence, predicate);
    triple.object_text = span_text(sentence, object);
    triples.push_back(std::move(triple));
  }
  return triples;
}

FileSrlAdapter FileSrlAdapter::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open SRL triple file: " + path);
  return from_stream(in);
}

FileSrlAdapter FileSrlAdapter::from_stream(std::istream& in) {
  FileSrlAdapter adapter;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string id_field, spans[3];
    if (!std::getline(ss, id_field, '\t') || !std::getline(ss, spans[0], '\t') ||
        !std::getline(ss, spans[1], '\t') || !std::getline(ss, spans[2], '\t')) {
      throw std::runtime_error("SRL file line " + std::to_string(line_no) + ": expected 4 fields");
    }
    std::array<TokenSpan, 3> record{};
    for (int i = 0; i < 3; ++i) {
      std::size_t colon = spans[i].find(':');
      if (colon == std::string::npos) {
        throw std::runtime_error("SRL file line " + std::to_string(line_no) + ": span lacks ':'");
      }
      record[static_cast<std::size_t>(i)] =
          TokenSpan{std::stoi(spans[i].substr(0, colon)), std::stoi(spans[i].substr(colon + 1))};
    }
    adapter.records_[std::stoi(id_field)].push_back(record);
  }
  return adapter;
}

std::vector<SrlTriple> FileSrlAdapter::extract(const Sentence& sentence) {
  std::vector<SrlTriple> triples;
  auto it = records_.find(sentence.id);
  if (it == records_.end()) return triples;
  for (const auto& record : it->second) {
    SrlTriple triple;
    triple.sentence_id = sentence.id;
    triple.subject = record[0];
    triple.predicate = record[1];
    triple.object = record[2];
    // Texts are derived after validation in extract_triples; fill what we
    // can here so direct users get consistent output.
    const int n = static_cast<int>(sentence.tokens.size());
    auto in_bounds = [n](TokenSpan s) { return s.start >= 0 && s.end <= n && s.valid(); };
    if (in_bounds(record[0])) triple.subject_text = span_text(sentence, record[0]);
    if (in_bounds(record[1])) triple.predicate_text = span_text(sentence, record[1]);
    if (in_bounds(record[2])) triple.object_text = span_text(sentence, record[2]);
    triples.push_back(std::move(triple));
  }
  return triples;
}

std::vector<int> retrieve_sentences(const std::string& question, const std::string& choice,
                                    const InvertedIndex& index, const StopwordSet& stopwords,
                                    int k) {
  std::vector<std::string> query = content_tokens(question, stopwords);
  for (auto& tok : content_tokens(choice, stopwords)) query.push_back(std::move(tok));

  std::vector<int> ids;
  for (const SearchHit& hit : bm25_search(index, query, k)) ids.push_back(hit.sentence_id);
  return ids;
}

std::vector<SrlTriple> extract_triples(const Sentence& sentence, SrlAdapter& adapter) {
  std::vector<SrlTriple> triples = adapter.extract(sentence);
  const int n = static_cast<int>(sentence.tokens.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const SrlTriple& t = triples[i];
    auto check = [&](TokenSpan span, const char* role) {
      if (span.start < 0 || span.end > n || !span.valid()) {
        throw std::runtime_error("SRL triple " + std::to_string(i) + " for sentence " +
                                 std::to_string(sentence.id) + ": invalid " + role + " span [" +
                                 std::to_string(span.start) + "," + std::to_string(span.end) + ")");
      }
    };
    check(t.subject, "subject");
    check(t.predicate, "predicate");
    check(t.object, "object");
  }
  return triples;
}

namespace {

bool rule_contained(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() <= 3 || a.size() > b.size()) return false;
  for (std::size_t offset = 0; offset + a.size() <= b.size(); ++offset) {
    bool match = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[offset + i]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

bool rule_one_word_apart(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size() || a.size() <= 3) return false;
  int differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i] && ++differing > 1) return false;
  }
  return differing == 1;
}

}  // namespace

WikiGraph build_wiki_graph(const std::vector<SrlTriple>& triples) {
  WikiGraph wiki;
  std::unordered_map<std::string, int> node_of_text;

  auto node_for = [&](const std::string& text, NodeOrigin origin, int sentence_id,
                      TokenSpan span) {
    auto it = node_of_text.find(text);
    if (it == node_of_text.end()) {
      int id = wiki.graph.graph.add_node();
      wiki.graph.nodes.push_back(EvidenceNode{text, origin, sentence_id});
      wiki.occurrences.emplace_back();
      it = node_of_text.emplace(text, id).first;
    }
    wiki.occurrences[static_cast<std::size_t>(it->second)].push_back(
        NodeOccurrence{sentence_id, span});
    return it->second;
  };

  for (const SrlTriple& t : triples) {
    int subj = node_for(t.subject_text, NodeOrigin::wiki_argument, t.sentence_id, t.subject);
    int pred = node_for(t.predicate_text, NodeOrigin::wiki_predicate, t.sentence_id, t.predicate);
    int obj = node_for(t.object_text, NodeOrigin::wiki_argument, t.sentence_id, t.object);
    if (subj != pred) wiki.graph.graph.add_edge(subj, pred);
    if (pred != obj) wiki.graph.graph.add_edge(pred, obj);
  }

  const int n = wiki.graph.node_count();
  std::vector<std::vector<std::string>> node_tokens;
  node_tokens.reserve(static_cast<std::size_t>(n));
  for (const EvidenceNode& node : wiki.graph.nodes) {
    node_tokens.push_back(tokenize_plain(node.text));
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto& ta = node_tokens[static_cast<std::size_t>(a)];
      const auto& tb = node_tokens[static_cast<std::size_t>(b)];
      if (rule_contained(ta, tb) || rule_one_word_apart(ta, tb)) {
        wiki.graph.graph.add_edge(a, b);
      }
    }
  }
  return wiki;
}

SentenceGraph project_sentence_graph(const WikiGraph& wiki,
                                     const std::vector<SrlTriple>& triples) {
  SentenceGraph out;
  std::unordered_set<int> seen_sentences;
  for (const SrlTriple& t : triples) {
    if (seen_sentences.insert(t.sentence_id).second) out.sentence_ids.push_back(t.sentence_id);
  }

  std::set<std::pair<int, int>> edge_set;
  for (const auto& [from, to] : wiki.graph.graph.edges()) {
    for (const NodeOccurrence& occ_from : wiki.occurrences[static_cast<std::size_t>(from)]) {
      for (const NodeOccurrence& occ_to : wiki.occurrences[static_cast<std::size_t>(to)]) {
        if (occ_from.sentence_id == occ_to.sentence_id) continue;
        if (edge_set.insert({occ_from.sentence_id, occ_to.sentence_id}).second) {
          out.edges.emplace_back(occ_from.sentence_id, occ_to.sentence_id);
        }
      }
    }
  }
  return out;
}

}  // namespace graphqa
