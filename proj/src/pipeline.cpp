#include "graphqa/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace graphqa {

using ordered_json = nlohmann::ordered_json;

Sources parse_sources(const std::string& name) {
  if (name == "none") return Sources::none;
  if (name == "concept") return Sources::concept_net;
  if (name == "wiki") return Sources::wiki;
  if (name == "both") return Sources::both;
  throw std::invalid_argument("unknown sources mode '" + name +
                              "' (expected none|concept|wiki|both)");
}

std::string to_string(Sources sources) {
  switch (sources) {
    case Sources::none: return "none";
    case Sources::concept_net: return "concept";
    case Sources::wiki: return "wiki";
    case Sources::both: return "both";
  }
  return "both";
}

std::uint64_t config_hash(const ExtractionConfig& config) {
  std::ostringstream canon;
  canon << "sources=" << to_string(config.sources) << ";topo=" << (config.topo_sort ? 1 : 0)
        << ";hops=" << config.max_hops << ";topk=" << config.top_k << ";len=" << config.max_len
        << ";wiki_first=" << (config.wiki_first ? 1 : 0);
  const std::string s = canon.str();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// ---- extraction ----------------------------------------------------------

ChoiceEvidence extract_choice(const ExtractionContext& ctx, const std::string& question,
                              const std::string& choice, const ExtractionConfig& config) {
  if (!ctx.store || !ctx.corpus || !ctx.index || !ctx.stopwords || !ctx.srl)
    throw std::invalid_argument("extraction context is incomplete");

  ChoiceEvidence ev;
  const bool want_concept =
      config.sources == Sources::concept_net || config.sources == Sources::both;
  const bool want_wiki = config.sources == Sources::wiki || config.sources == Sources::both;

  if (want_concept) {
    const auto question_concepts = ground_concepts(question, *ctx.store, *ctx.stopwords);
    const auto choice_concepts = ground_concepts(choice, *ctx.store, *ctx.stopwords);
    const std::set<std::string> from(question_concepts.begin(), question_concepts.end());
    const std::set<std::string> to(choice_concepts.begin(), choice_concepts.end());
    ev.paths = find_paths(*ctx.store, from, to, config.max_hops);
    ev.concept_graph = build_concept_graph(ev.paths, *ctx.store);
    if (config.topo_sort) {
      ev.concept_order = topo_sort(ev.concept_graph.graph);
    } else {
      ev.concept_order.resize(static_cast<std::size_t>(ev.concept_graph.node_count()));
      std::iota(ev.concept_order.begin(), ev.concept_order.end(), 0);
    }
  }

  if (want_wiki) {
    ev.retrieved = retrieve_sentences(question, choice, *ctx.index, *ctx.stopwords, config.top_k);
    for (int sid : ev.retrieved) {
      const auto& sentence = ctx.corpus->sentences.at(static_cast<std::size_t>(sid));
      const auto triples = extract_triples(sentence, *ctx.srl);
      ev.srl_triples.insert(ev.srl_triples.end(), triples.begin(), triples.end());
    }
    ev.wiki = build_wiki_graph(ev.srl_triples);
    ev.sentence_graph = project_sentence_graph(ev.wiki, ev.srl_triples);

    // Sentences that yielded SRL structure are ordered by the sentence
    // graph; the rest keep their retrieval rank, appended after.
    std::vector<int> ordered;
    if (config.topo_sort && !ev.sentence_graph.sentence_ids.empty()) {
      DirectedGraph sg(static_cast<int>(ev.sentence_graph.sentence_ids.size()));
      std::map<int, int> local;
      for (std::size_t i = 0; i < ev.sentence_graph.sentence_ids.size(); ++i)
        local[ev.sentence_graph.sentence_ids[i]] = static_cast<int>(i);
      for (const auto& [from, to] : ev.sentence_graph.edges) sg.add_edge(local.at(from), local.at(to));
      for (int node : topo_sort(sg))
        ordered.push_back(ev.sentence_graph.sentence_ids[static_cast<std::size_t>(node)]);
    } else {
      ordered = ev.sentence_graph.sentence_ids;
    }
    std::set<int> placed(ordered.begin(), ordered.end());
    for (int sid : ev.retrieved)
      if (placed.insert(sid).second) ordered.push_back(sid);
    ev.sentence_order = std::move(ordered);
  }

  std::vector<std::string> concept_units;
  concept_units.reserve(ev.concept_order.size());
  for (int node : ev.concept_order)
    concept_units.push_back(ev.concept_graph.nodes.at(static_cast<std::size_t>(node)).text);
  std::vector<std::string> wiki_units;
  wiki_units.reserve(ev.sentence_order.size());
  for (int sid : ev.sentence_order)
    wiki_units.push_back(ctx.corpus->sentences.at(static_cast<std::size_t>(sid)).text);

  ev.linearized = assemble_input(concept_units, wiki_units, question, choice, config.max_len,
                                 config.wiki_first);
  return ev;
}

// ---- cache serialization --------------------------------------------------

namespace {

std::string origin_label(NodeOrigin origin) {
  switch (origin) {
    case NodeOrigin::concept_triple: return "concept";
    case NodeOrigin::wiki_argument: return "argument";
    case NodeOrigin::wiki_predicate: return "predicate";
  }
  return "concept";
}

NodeOrigin origin_from_label(const std::string& label) {
  if (label == "concept") return NodeOrigin::concept_triple;
  if (label == "argument") return NodeOrigin::wiki_argument;
  if (label == "predicate") return NodeOrigin::wiki_predicate;
  throw std::runtime_error("unknown node origin '" + label + "'");
}

ordered_json span_json(const TokenSpan& span) { return ordered_json::array({span.start, span.end}); }

TokenSpan span_from_json(const ordered_json& j) {
  TokenSpan span;
  span.start = j.at(0).get<int>();
  span.end = j.at(1).get<int>();
  return span;
}

ordered_json edges_json(const std::vector<std::pair<int, int>>& edges) {
  ordered_json out = ordered_json::array();
  for (const auto& [from, to] : edges) out.push_back(ordered_json::array({from, to}));
  return out;
}

ordered_json entry_json(const std::string& instance_id, int choice, const ChoiceEvidence& ev) {
  ordered_json j;
  j["instance"] = instance_id;
  j["choice"] = choice;
  j["failed"] = ev.failed;
  j["error"] = ev.error;

  ordered_json paths = ordered_json::array();
  for (const auto& path : ev.paths) {
    ordered_json p;
    p["triples"] = path.triple_ids;
    p["source"] = path.source;
    p["target"] = path.target;
    paths.push_back(std::move(p));
  }
  j["paths"] = std::move(paths);

  ordered_json concept_nodes = ordered_json::array();
  for (const auto& node : ev.concept_graph.nodes) concept_nodes.push_back(node.text);
  j["concept_nodes"] = std::move(concept_nodes);
  j["concept_edges"] = edges_json(ev.concept_graph.graph.edges());
  j["concept_order"] = ev.concept_order;

  j["retrieved"] = ev.retrieved;
  ordered_json srl = ordered_json::array();
  for (const auto& t : ev.srl_triples) {
    ordered_json record;
    record["sentence"] = t.sentence_id;
    record["subject"] = span_json(t.subject);
    record["predicate"] = span_json(t.predicate);
    record["object"] = span_json(t.object);
    record["subject_text"] = t.subject_text;
    record["predicate_text"] = t.predicate_text;
    record["object_text"] = t.object_text;
    srl.push_back(std::move(record));
  }
  j["srl"] = std::move(srl);

  ordered_json wiki_nodes = ordered_json::array();
  for (std::size_t i = 0; i < ev.wiki.graph.nodes.size(); ++i) {
    const auto& node = ev.wiki.graph.nodes[i];
    ordered_json record;
    record["text"] = node.text;
    record["origin"] = origin_label(node.origin);
    ordered_json occurrences = ordered_json::array();
    for (const auto& occ : ev.wiki.occurrences.at(i))
      occurrences.push_back(ordered_json::array({occ.sentence_id, occ.span.start, occ.span.end}));
    record["occurrences"] = std::move(occurrences);
    wiki_nodes.push_back(std::move(record));
  }
  j["wiki_nodes"] = std::move(wiki_nodes);
  j["wiki_edges"] = edges_json(ev.wiki.graph.graph.edges());

  j["sentence_nodes"] = ev.sentence_graph.sentence_ids;
  j["sentence_edges"] = edges_json(ev.sentence_graph.edges);
  j["sentence_order"] = ev.sentence_order;

  ordered_json units = ordered_json::array();
  for (const auto& unit : ev.linearized.units) {
    ordered_json record;
    record["kind"] = unit.kind == UnitKind::concept_node ? "concept" : "wiki";
    record["ordinal"] = unit.ordinal;
    record["text"] = unit.text;
    record["span"] = span_json(unit.span);
    units.push_back(std::move(record));
  }
  j["units"] = std::move(units);
  j["tokens"] = ev.linearized.tokens;
  j["cls"] = ev.linearized.cls_position;
  return j;
}

ChoiceEvidence entry_from_json(const ordered_json& j) {
  ChoiceEvidence ev;
  ev.failed = j.at("failed").get<bool>();
  ev.error = j.at("error").get<std::string>();

  for (const auto& p : j.at("paths")) {
    ConceptPath path;
    path.triple_ids = p.at("triples").get<std::vector<int>>();
    path.source = p.at("source").get<std::string>();
    path.target = p.at("target").get<std::string>();
    ev.paths.push_back(std::move(path));
  }

  for (const auto& text : j.at("concept_nodes")) {
    EvidenceNode node;
    node.text = text.get<std::string>();
    node.origin = NodeOrigin::concept_triple;
    ev.concept_graph.nodes.push_back(std::move(node));
  }
  ev.concept_graph.graph = DirectedGraph(ev.concept_graph.node_count());
  for (const auto& e : j.at("concept_edges"))
    ev.concept_graph.graph.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  ev.concept_order = j.at("concept_order").get<std::vector<int>>();

  ev.retrieved = j.at("retrieved").get<std::vector<int>>();
  for (const auto& record : j.at("srl")) {
    SrlTriple t;
    t.sentence_id = record.at("sentence").get<int>();
    t.subject = span_from_json(record.at("subject"));
    t.predicate = span_from_json(record.at("predicate"));
    t.object = span_from_json(record.at("object"));
    t.subject_text = record.at("subject_text").get<std::string>();
    t.predicate_text = record.at("predicate_text").get<std::string>();
    t.object_text = record.at("object_text").get<std::string>();
    ev.srl_triples.push_back(std::move(t));
  }

  for (const auto& record : j.at("wiki_nodes")) {
    EvidenceNode node;
    node.text = record.at("text").get<std::string>();
    node.origin = origin_from_label(record.at("origin").get<std::string>());
    ev.wiki.graph.nodes.push_back(std::move(node));
    std::vector<NodeOccurrence> occurrences;
    for (const auto& occ : record.at("occurrences")) {
      NodeOccurrence o;
      o.sentence_id = occ.at(0).get<int>();
      o.span.start = occ.at(1).get<int>();
      o.span.end = occ.at(2).get<int>();
      occurrences.push_back(o);
    }
    ev.wiki.occurrences.push_back(std::move(occurrences));
  }
  ev.wiki.graph.graph = DirectedGraph(ev.wiki.graph.node_count());
  for (const auto& e : j.at("wiki_edges"))
    ev.wiki.graph.graph.add_edge(e.at(0).get<int>(), e.at(1).get<int>());

  ev.sentence_graph.sentence_ids = j.at("sentence_nodes").get<std::vector<int>>();
  for (const auto& e : j.at("sentence_edges"))
    ev.sentence_graph.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  ev.sentence_order = j.at("sentence_order").get<std::vector<int>>();

  for (const auto& record : j.at("units")) {
    AssembledUnit unit;
    unit.kind = record.at("kind").get<std::string>() == "concept" ? UnitKind::concept_node
                                                                  : UnitKind::wiki_sentence;
    unit.ordinal = record.at("ordinal").get<int>();
    unit.text = record.at("text").get<std::string>();
    unit.span = span_from_json(record.at("span"));
    ev.linearized.units.push_back(std::move(unit));
  }
  ev.linearized.tokens = j.at("tokens").get<std::vector<std::string>>();
  ev.linearized.cls_position = j.at("cls").get<int>();
  return ev;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace

EvidenceCache::EvidenceCache(std::string directory, std::uint64_t config_hash)
    : directory_(std::move(directory)), hash_(config_hash) {}

std::string EvidenceCache::file_path() const {
  return directory_ + "/evidence-" + hash_hex(hash_) + ".json";
}

EvidenceCache EvidenceCache::open(const std::string& directory, std::uint64_t config_hash) {
  EvidenceCache cache(directory, config_hash);
  const std::string path = cache.file_path();
  std::ifstream in(path);
  if (!in) return cache;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  EvidenceCache loaded = deserialize(buffer.str(), directory);
  if (loaded.hash_ != config_hash)
    throw std::runtime_error("cache file " + path + " was written for a different config");
  return loaded;
}

bool EvidenceCache::contains(const std::string& instance_id, int choice) const {
  return entries_.count({instance_id, choice}) > 0;
}

const ChoiceEvidence& EvidenceCache::at(const std::string& instance_id, int choice) const {
  const auto it = entries_.find({instance_id, choice});
  if (it == entries_.end())
    throw std::runtime_error("no cached evidence for instance '" + instance_id + "' choice " +
                             std::to_string(choice) + "; run extraction first");
  return it->second;
}

void EvidenceCache::put(const std::string& instance_id, int choice, ChoiceEvidence evidence) {
  entries_[{instance_id, choice}] = std::move(evidence);
}

std::string EvidenceCache::serialize() const {
  ordered_json j;
  j["format"] = "graphqa-evidence-cache";
  j["version"] = 1;
  j["config"] = hash_hex(hash_);
  ordered_json entries = ordered_json::array();
  for (const auto& [key, ev] : entries_) entries.push_back(entry_json(key.first, key.second, ev));
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

EvidenceCache EvidenceCache::deserialize(const std::string& text, std::string directory) {
  ordered_json j = ordered_json::parse(text);
  if (j.value("format", "") != "graphqa-evidence-cache")
    throw std::runtime_error("not an evidence cache file");
  if (j.value("version", 0) != 1) throw std::runtime_error("unsupported cache version");

  EvidenceCache cache(std::move(directory), 0);
  cache.hash_ = std::stoull(j.at("config").get<std::string>(), nullptr, 16);
  for (const auto& entry : j.at("entries")) {
    const std::string id = entry.at("instance").get<std::string>();
    const int choice = entry.at("choice").get<int>();
    cache.entries_[{id, choice}] = entry_from_json(entry);
  }
  return cache;
}

void EvidenceCache::save() const {
  if (directory_.empty()) throw std::runtime_error("cache has no directory");
  std::filesystem::create_directories(directory_);
  std::ofstream out(file_path(), std::ios::binary);
  if (!out) throw std::runtime_error("cannot write cache file: " + file_path());
  out << serialize();
  if (!out) throw std::runtime_error("cache write failed: " + file_path());
}

ExtractionStats run_extraction(const std::vector<QAInstance>& instances,
                               const ExtractionContext& ctx, const ExtractionConfig& config,
                               EvidenceCache& cache) {
  ExtractionStats stats;
  for (const auto& instance : instances) {
    for (int c = 0; c < 5; ++c) {
      if (cache.contains(instance.id, c)) {
        ++stats.cache_hits;
        continue;
      }
      ChoiceEvidence ev;
      try {
        ev = extract_choice(ctx, instance.question,
                            instance.choices[static_cast<std::size_t>(c)], config);
      } catch (const std::exception& e) {
        // Degrade to the no-evidence path so one bad extraction never
        // sinks the batch; the reasoner scores such entries from cls.
        ev = ChoiceEvidence{};
        ev.failed = true;
        ev.error = e.what();
        try {
          ev.linearized =
              assemble_input({}, {}, instance.question,
                             instance.choices[static_cast<std::size_t>(c)], config.max_len);
        } catch (const std::exception& inner) {
          ev.error += std::string("; fallback assembly failed: ") + inner.what();
        }
        ++stats.failures;
      }
      cache.put(instance.id, c, std::move(ev));
      ++stats.computed;
    }
  }
  return stats;
}

// ---- reasoner input assembly ----------------------------------------------

ChoiceArtifacts build_choice_artifacts(const ChoiceEvidence& evidence, EncodedSequence enc,
                                       bool graph_inference) {
  ChoiceArtifacts art;
  art.enc = std::move(enc);
  if (!graph_inference) {
    art.finalize();
    return art;
  }

  const int concept_count = evidence.concept_graph.node_count();
  const int wiki_count = evidence.wiki.graph.node_count();
  art.spans.assign(static_cast<std::size_t>(concept_count + wiki_count), TokenSpan{});
  art.neighbors.assign(static_cast<std::size_t>(concept_count + wiki_count), {});

  std::map<int, TokenSpan> sentence_span;  // sentence id -> surviving unit span
  for (const auto& unit : evidence.linearized.units) {
    if (unit.kind == UnitKind::concept_node) {
      const int node = evidence.concept_order.at(static_cast<std::size_t>(unit.ordinal));
      art.spans.at(static_cast<std::size_t>(node)) = unit.span;
    } else if (unit.span.valid()) {
      sentence_span[evidence.sentence_order.at(static_cast<std::size_t>(unit.ordinal))] = unit.span;
    }
  }

  // A wiki node's span is its first occurrence that survived truncation,
  // shifted into assembled-sequence coordinates and clipped to the unit.
  for (int w = 0; w < wiki_count; ++w) {
    for (const auto& occ : evidence.wiki.occurrences.at(static_cast<std::size_t>(w))) {
      const auto it = sentence_span.find(occ.sentence_id);
      if (it == sentence_span.end()) continue;
      const TokenSpan& unit = it->second;
      const int start = unit.start + occ.span.start;
      const int end = std::min(unit.start + occ.span.end, unit.end);
      if (start >= unit.end || start >= end) continue;
      art.spans.at(static_cast<std::size_t>(concept_count + w)) = TokenSpan{start, end};
      break;
    }
  }

  auto link = [&art](int a, int b) {
    art.neighbors.at(static_cast<std::size_t>(a)).push_back(b);
    art.neighbors.at(static_cast<std::size_t>(b)).push_back(a);
  };
  for (const auto& [from, to] : evidence.concept_graph.graph.edges()) link(from, to);
  for (const auto& [from, to] : evidence.wiki.graph.graph.edges())
    link(concept_count + from, concept_count + to);
  for (auto& adjacency : art.neighbors) {
    std::sort(adjacency.begin(), adjacency.end());
    adjacency.erase(std::unique(adjacency.begin(), adjacency.end()), adjacency.end());
  }

  art.finalize();
  return art;
}

ReasonerInstance build_reasoner_instance(const QAInstance& instance, const EvidenceCache& cache,
                                         const ToyEncoder& encoder,
                                         const ExtractionConfig& config) {
  ReasonerInstance out;
  out.gold = instance.gold;
  for (int c = 0; c < 5; ++c) {
    const ChoiceEvidence& ev = cache.at(instance.id, c);
    if (ev.linearized.tokens.empty())
      throw std::runtime_error("cached evidence for instance '" + instance.id + "' choice " +
                               std::to_string(c) + " has no token sequence (" + ev.error + ")");
    out.choices[static_cast<std::size_t>(c)] = build_choice_artifacts(
        ev, encoder.encode(ev.linearized.tokens), config.graph_inference);
  }
  return out;
}

// ---- evaluation / training / explanation -----------------------------------

EvalResult evaluate(const std::vector<QAInstance>& instances, const EvidenceCache& cache,
                    const ToyEncoder& encoder, const ExtractionConfig& config,
                    const ReasonerParams& params) {
  EvalResult result;
  for (const auto& instance : instances) {
    if (instance.gold < 0)
      throw std::invalid_argument("instance '" + instance.id + "' has no gold label");
    const auto built = build_reasoner_instance(instance, cache, encoder, config);
    const auto scores = predict(built, params);
    const int predicted = argmax_choice(scores);
    result.predictions.push_back(predicted);
    if (predicted == instance.gold) ++result.correct;
    ++result.total;
  }
  result.accuracy =
      result.total == 0 ? 0.0 : static_cast<double>(result.correct) / result.total;
  return result;
}

namespace {

double accuracy_of(const std::vector<ReasonerInstance>& built, const ReasonerParams& params) {
  if (built.empty()) return 0.0;
  int correct = 0;
  for (const auto& instance : built)
    if (argmax_choice(predict(instance, params)) == instance.gold) ++correct;
  return static_cast<double>(correct) / static_cast<double>(built.size());
}

}  // namespace

TrainResult train(const std::vector<QAInstance>& instances, const EvidenceCache& cache,
                  const ToyEncoder& encoder, const ExtractionConfig& config,
                  const TrainOptions& options, ReasonerParams& params, AdamState& adam) {
  if (instances.empty()) throw std::invalid_argument("no training instances");
  if (options.batch_size <= 0) throw std::invalid_argument("batch size must be positive");

  // The encoder is frozen, so every instance is encoded exactly once.
  std::vector<ReasonerInstance> built;
  built.reserve(instances.size());
  for (const auto& instance : instances) {
    if (instance.gold < 0)
      throw std::invalid_argument("instance '" + instance.id + "' has no gold label");
    built.push_back(build_reasoner_instance(instance, cache, encoder, config));
  }

  adam.learning_rate = options.learning_rate;
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(built.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result;
  ReasonerParams grads = zeros_like(params);
  std::size_t cursor = order.size();  // forces a shuffle on the first step
  while (result.steps_run < options.steps) {
    std::vector<ReasonerInstance> batch;
    while (static_cast<int>(batch.size()) < options.batch_size) {
      if (cursor == order.size()) {
        std::shuffle(order.begin(), order.end(), rng);
        cursor = 0;
      }
      batch.push_back(built[order[cursor++]]);
    }
    const double loss = loss_and_grads(batch, params, grads);
    adam_step(params, grads, adam);
    result.losses.push_back(loss);
    ++result.steps_run;

    if (options.eval_every > 0 && options.stop_at_accuracy >= 0.0 &&
        result.steps_run % options.eval_every == 0) {
      if (accuracy_of(built, params) >= options.stop_at_accuracy) break;
    }
  }
  result.train_accuracy = accuracy_of(built, params);
  return result;
}

Explanation explain(const QAInstance& instance, const EvidenceCache& cache,
                    const ToyEncoder& encoder, const ExtractionConfig& config,
                    const ReasonerParams& params) {
  const auto built = build_reasoner_instance(instance, cache, encoder, config);
  const auto scores = predict(built, params);

  Explanation report;
  report.instance_id = instance.id;
  report.question = instance.question;
  report.predicted = argmax_choice(scores);
  for (int c = 0; c < 5; ++c) {
    auto& detail = report.choices[static_cast<std::size_t>(c)];
    detail.text = instance.choices[static_cast<std::size_t>(c)];
    detail.score = scores[static_cast<std::size_t>(c)].score;
    detail.probability = scores[static_cast<std::size_t>(c)].probability;

    const ChoiceEvidence& ev = cache.at(instance.id, c);
    const auto& art = built.choices[static_cast<std::size_t>(c)];
    const auto& alpha = scores[static_cast<std::size_t>(c)].attention;
    const int concept_count = ev.concept_graph.node_count();
    for (int node = 0; node < art.node_count(); ++node) {
      if (!art.active[static_cast<std::size_t>(node)]) continue;
      const bool is_concept = node < concept_count;
      const EvidenceNode& info =
          is_concept ? ev.concept_graph.nodes[static_cast<std::size_t>(node)]
                     : ev.wiki.graph.nodes[static_cast<std::size_t>(node - concept_count)];
      detail.nodes.emplace_back(info.text, origin_label(info.origin), alpha[node]);
    }
  }
  return report;
}

std::string explanation_to_json(const Explanation& report) {
  ordered_json j;
  j["instance"] = report.instance_id;
  j["question"] = report.question;
  j["predicted"] = report.predicted;
  ordered_json choices = ordered_json::array();
  for (const auto& detail : report.choices) {
    ordered_json c;
    c["text"] = detail.text;
    c["score"] = detail.score;
    c["probability"] = detail.probability;
    ordered_json nodes = ordered_json::array();
    for (const auto& [text, origin, alpha] : detail.nodes) {
      ordered_json node;
      node["text"] = text;
      node["origin"] = origin;
      node["attention"] = alpha;
      nodes.push_back(std::move(node));
    }
    c["nodes"] = std::move(nodes);
    choices.push_back(std::move(c));
  }
  j["choices"] = std::move(choices);
  return j.dump(2) + "\n";
}

std::string explanation_to_table(const Explanation& report) {
  std::ostringstream out;
  out << "instance: " << report.instance_id << "\n";
  out << "question: " << report.question << "\n";
  for (std::size_t c = 0; c < report.choices.size(); ++c) {
    const auto& detail = report.choices[c];
    out << (static_cast<int>(c) == report.predicted ? "> " : "  ");
    out << static_cast<char>('A' + c) << ". " << detail.text << "  (p=" << detail.probability
        << ", score=" << detail.score << ")\n";
    for (const auto& [text, origin, alpha] : detail.nodes)
      out << "      [" << origin << "] " << text << "  alpha=" << alpha << "\n";
  }
  return out.str();
}

}  // namespace graphqa
