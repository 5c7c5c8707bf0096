#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphqa/text.hpp"

namespace graphqa {

struct Sentence {
  int id = 0;
  std::string text;
  std::vector<std::string> tokens;  // lowercase, re-derivable from text
};

/// One sentence per line; sentence id = 0-based line number.
struct SentenceCorpus {
  std::vector<Sentence> sentences;

  const Sentence& at(int id) const { return sentences.at(static_cast<std::size_t>(id)); }
  int size() const { return static_cast<int>(sentences.size()); }
};

SentenceCorpus load_corpus(std::istream& in);
SentenceCorpus load_corpus_file(const std::string& path);

struct Posting {
  int sentence_id;
  int term_frequency;
};

/// Okapi BM25 inverted index. Stopwords are never indexed; a sentence's
/// doc_length counts its indexed (non-stopword) tokens only, so summing
/// term frequencies over a sentence's postings reproduces doc_lengths.
/// Immutable after build_index; concurrent queries need no locking.
struct InvertedIndex {
  std::unordered_map<std::string, std::vector<Posting>> postings;  // lists sorted by sentence id
  std::vector<int> doc_lengths;
  double avg_doc_length = 0.0;  // 0 for the empty corpus
  double k1 = 1.2;
  double b = 0.75;
};

InvertedIndex build_index(const SentenceCorpus& corpus, const StopwordSet& stopwords,
                          double k1 = 1.2, double b = 0.75);

struct SearchHit {
  int sentence_id;
  double score;
};

/// Ranked descending by score, ties broken by ascending sentence id.
/// Duplicate query tokens contribute once per occurrence. Query tokens
/// absent from the postings (including stopwords) contribute nothing.
///
/// idf(t)     = ln(1 + (N - df + 0.5) / (df + 0.5))
/// score(D,q) = sum_t idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * |D| / avgdl))
std::vector<SearchHit> bm25_search(const InvertedIndex& index,
                                   const std::vector<std::string>& query_tokens,
                                   int k);

}  // namespace graphqa
