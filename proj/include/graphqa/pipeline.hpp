#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graphqa/concept.hpp"
#include "graphqa/corpus.hpp"
#include "graphqa/dataset.hpp"
#include "graphqa/encoder.hpp"
#include "graphqa/linearize.hpp"
#include "graphqa/reasoner.hpp"
#include "graphqa/triple_store.hpp"
#include "graphqa/wiki.hpp"

namespace graphqa {

enum class Sources : std::uint8_t { none, concept_net, wiki, both };

Sources parse_sources(const std::string& name);  // throws on unknown name
std::string to_string(Sources sources);

struct ExtractionConfig {
  Sources sources = Sources::both;
  bool topo_sort = true;
  bool graph_inference = true;  // reasoning switch; does not affect extraction
  int max_hops = 2;
  int top_k = 10;
  int max_len = 256;
  bool wiki_first = false;
};

/// FNV-1a over the extraction-relevant fields only (graph_inference is a
/// reasoning-time switch, so toggling it reuses the same cache).
std::uint64_t config_hash(const ExtractionConfig& config);

/// Everything computed for one (instance, choice) pair. Intentionally
/// float-free so the cache file round-trips byte-identically.
struct ChoiceEvidence {
  bool failed = false;
  std::string error;

  std::vector<ConceptPath> paths;
  EvidenceGraph concept_graph;
  std::vector<int> concept_order;  // node ids in emission order

  std::vector<int> retrieved;      // sentence ids in BM25 rank order
  std::vector<SrlTriple> srl_triples;
  WikiGraph wiki;
  SentenceGraph sentence_graph;
  std::vector<int> sentence_order; // sentence ids in emission order

  LinearizedEvidence linearized;
};

/// Read-only stores the extractor runs against.
struct ExtractionContext {
  const TripleStore* store = nullptr;
  const SentenceCorpus* corpus = nullptr;
  const InvertedIndex* index = nullptr;
  const StopwordSet* stopwords = nullptr;
  SrlAdapter* srl = nullptr;
};

/// Full single-choice pipeline: ground → paths → Concept-Graph, retrieve →
/// SRL → Wiki-Graph → SentenceGraph, order per config, assemble input.
ChoiceEvidence extract_choice(const ExtractionContext& ctx, const std::string& question,
                              const std::string& choice, const ExtractionConfig& config);

/// One JSON file per extraction config. serialize→deserialize→serialize
/// is byte-identical; entries are keyed (instance id, choice index).
class EvidenceCache {
 public:
  EvidenceCache() = default;
  EvidenceCache(std::string directory, std::uint64_t config_hash);

  /// Loads the cache file when it exists, otherwise starts empty.
  static EvidenceCache open(const std::string& directory, std::uint64_t config_hash);

  std::string file_path() const;
  std::uint64_t hash() const { return hash_; }
  std::size_t size() const { return entries_.size(); }

  bool contains(const std::string& instance_id, int choice) const;
  const ChoiceEvidence& at(const std::string& instance_id, int choice) const;  // throws, names instance
  void put(const std::string& instance_id, int choice, ChoiceEvidence evidence);

  std::string serialize() const;
  static EvidenceCache deserialize(const std::string& text, std::string directory = "");
  void save() const;

 private:
  std::string directory_;
  std::uint64_t hash_ = 0;
  std::map<std::pair<std::string, int>, ChoiceEvidence> entries_;
};

struct ExtractionStats {
  int computed = 0;
  int cache_hits = 0;
  int failures = 0;
};

/// Extracts evidence for every (instance, choice) not already cached.
/// Individual failures degrade to an empty-evidence entry and are
/// counted, never aborting the batch.
ExtractionStats run_extraction(const std::vector<QAInstance>& instances,
                               const ExtractionContext& ctx, const ExtractionConfig& config,
                               EvidenceCache& cache);

/// Union Concept∪Wiki graph with assembled-sequence spans for one choice.
/// With graph_inference off the artifact has zero nodes and the reasoner
/// scores from [cls; 0].
ChoiceArtifacts build_choice_artifacts(const ChoiceEvidence& evidence, EncodedSequence enc,
                                       bool graph_inference);

/// Encodes all five choices and assembles reasoner inputs. Throws when a
/// cache entry is missing or unusable, naming the instance.
ReasonerInstance build_reasoner_instance(const QAInstance& instance, const EvidenceCache& cache,
                                         const ToyEncoder& encoder,
                                         const ExtractionConfig& config);

struct EvalResult {
  double accuracy = 0.0;
  int correct = 0;
  int total = 0;
  std::vector<int> predictions;  // per instance, argmax choice index
};

EvalResult evaluate(const std::vector<QAInstance>& instances, const EvidenceCache& cache,
                    const ToyEncoder& encoder, const ExtractionConfig& config,
                    const ReasonerParams& params);

struct TrainOptions {
  int steps = 200;
  int batch_size = 4;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  int eval_every = 0;             // 0 disables early accuracy checks
  double stop_at_accuracy = -1.0; // early stop threshold when eval_every > 0
};

struct TrainResult {
  std::vector<double> losses;     // one per optimizer step taken
  int steps_run = 0;
  double train_accuracy = 0.0;    // measured after the final step
};

/// Seeded minibatch Adam over the reasoner parameters; the encoder stays
/// frozen. Instances are shuffled each epoch with the given seed.
TrainResult train(const std::vector<QAInstance>& instances, const EvidenceCache& cache,
                  const ToyEncoder& encoder, const ExtractionConfig& config,
                  const TrainOptions& options, ReasonerParams& params, AdamState& adam);

struct Explanation {
  std::string instance_id;
  std::string question;
  int predicted = 0;
  struct ChoiceDetail {
    std::string text;
    double score = 0.0;
    double probability = 0.0;
    // (node text, origin label, attention weight) for active nodes
    std::vector<std::tuple<std::string, std::string, double>> nodes;
  };
  std::array<ChoiceDetail, 5> choices;
};

/// Attention report for one instance; α values come from the same
/// forward pass predict() runs, so they match bit-for-bit.
Explanation explain(const QAInstance& instance, const EvidenceCache& cache,
                    const ToyEncoder& encoder, const ExtractionConfig& config,
                    const ReasonerParams& params);

std::string explanation_to_json(const Explanation& report);
std::string explanation_to_table(const Explanation& report);

}  // namespace graphqa
