#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "graphqa/corpus.hpp"
#include "graphqa/graph.hpp"
#include "graphqa/linearize.hpp"
#include "graphqa/text.hpp"

namespace graphqa {

/// (subject, predicate, object) spans over one sentence's token list.
struct SrlTriple {
  int sentence_id = -1;
  TokenSpan subject;
  TokenSpan predicate;
  TokenSpan object;
  std::string subject_text;
  std::string predicate_text;
  std::string object_text;
};

/// Producers of SRL triples. Adapters must be deterministic per input;
/// output is validated against the span invariants before use.
class SrlAdapter {
 public:
  virtual ~SrlAdapter() = default;
  virtual std::vector<SrlTriple> extract(const Sentence& sentence) = 0;
};

/// Hermetic fallback: splits a sentence into clauses at subordinator
/// tokens, then takes the first verb group of each clause as predicate
/// with everything before/after as subject/object.
class PatternSrlAdapter : public SrlAdapter {
 public:
  std::vector<SrlTriple> extract(const Sentence& sentence) override;
};

/// Replays triples supplied by an external SRL system. File format, one
/// record per line, token offsets with exclusive ends:
///   sentence_id<TAB>subj_start:subj_end<TAB>pred_start:pred_end<TAB>obj_start:obj_end
class FileSrlAdapter : public SrlAdapter {
 public:
  static FileSrlAdapter from_file(const std::string& path);
  static FileSrlAdapter from_stream(std::istream& in);

  std::vector<SrlTriple> extract(const Sentence& sentence) override;

 private:
  std::map<int, std::vector<std::array<TokenSpan, 3>>> records_;
};

/// Stopword-filtered question+choice tokens, top-k sentence ids in BM25
/// rank order.
std::vector<int> retrieve_sentences(const std::string& question, const std::string& choice,
                                    const InvertedIndex& index, const StopwordSet& stopwords,
                                    int k);

/// Runs the adapter and validates every triple's spans against the
/// sentence. Throws std::runtime_error naming the offending triple.
std::vector<SrlTriple> extract_triples(const Sentence& sentence, SrlAdapter& adapter);

struct NodeOccurrence {
  int sentence_id;
  TokenSpan span;
};

/// Wiki-Graph plus, per node, every (sentence, span) place its text was
/// seen. Identical texts across sentences merge into a single node.
struct WikiGraph {
  EvidenceGraph graph;
  std::vector<std::vector<NodeOccurrence>> occurrences;  // by node id
};

/// Nodes are distinct argument/predicate texts; per triple the edges
/// subject->predicate and predicate->object, plus for every ordered node
/// pair (a, b):
///   rule 1: a's tokens are a contiguous subsequence of b's and a has
///           more than 3 tokens;
///   rule 2: equal token count above 3 and exactly one differing position
///           (symmetric, so both directions appear).
WikiGraph build_wiki_graph(const std::vector<SrlTriple>& triples);

/// Edge s_i -> s_j for every Wiki-Graph edge whose endpoint texts occur
/// in distinct sentences s_i != s_j.
SentenceGraph project_sentence_graph(const WikiGraph& wiki,
                                     const std::vector<SrlTriple>& triples);

}  // namespace graphqa
