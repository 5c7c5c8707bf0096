#include "graphqa/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace graphqa {

SentenceCorpus load_corpus(std::istream& in) {
  SentenceCorpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    Sentence s;
    s.id = static_cast<int>(corpus.sentences.size());
    s.text = line;
    s.tokens = tokenize_plain(line);
    corpus.sentences.push_back(std::move(s));
  }
  return corpus;
}

SentenceCorpus load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  return load_corpus(in);
}

InvertedIndex build_index(const SentenceCorpus& corpus, const StopwordSet& stopwords,
                          double k1, double b) {
  InvertedIndex index;
  index.k1 = k1;
  index.b = b;
  index.doc_lengths.resize(corpus.sentences.size(), 0);

  long long total_length = 0;
  for (const Sentence& s : corpus.sentences) {
    // std::map keeps term order deterministic within a sentence.
    std::map<std::string, int> tf;
    for (const std::string& tok : s.tokens) {
      if (stopwords.contains(tok)) continue;
      ++tf[tok];
    }
    int length = 0;
    for (const auto& [term, count] : tf) {
      index.postings[term].push_back(Posting{s.id, count});
      length += count;
    }
    index.doc_lengths[static_cast<std::size_t>(s.id)] = length;
    total_length += length;
  }
  index.avg_doc_length =
      corpus.sentences.empty() ? 0.0
                               : static_cast<double>(total_length) /
                                     static_cast<double>(corpus.sentences.size());
  return index;
}

std::vector<SearchHit> bm25_search(const InvertedIndex& index,
                                   const std::vector<std::string>& query_tokens,
                                   int k) {
  if (k <= 0 || index.doc_lengths.empty()) return {};

  const double n_docs = static_cast<double>(index.doc_lengths.size());
  std::unordered_map<int, double> scores;
  for (const std::string& term : query_tokens) {
    auto it = index.postings.find(term);
    if (it == index.postings.end()) continue;
    const auto& plist = it->second;
    const double df = static_cast<double>(plist.size());
    const double idf = std::log(1.0 + (n_docs - df + 0.5) / (df + 0.5));
    for (const Posting& p : plist) {
      const double tf = static_cast<double>(p.term_frequency);
      const double len_ratio =
          index.avg_doc_length > 0.0
              ? static_cast<double>(index.doc_lengths[static_cast<std::size_t>(p.sentence_id)]) /
                    index.avg_doc_length
              : 0.0;
      const double denom = tf + index.k1 * (1.0 - index.b + index.b * len_ratio);
      scores[p.sentence_id] += idf * tf * (index.k1 + 1.0) / denom;
    }
  }

  std::vector<SearchHit> hits;
  hits.reserve(scores.size());
  for (const auto& [id, score] : scores) hits.push_back(SearchHit{id, score});
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.sentence_id < b.sentence_id;
  });
  if (static_cast<int>(hits.size()) > k) hits.resize(static_cast<std::size_t>(k));
  return hits;
}

}  // namespace graphqa
