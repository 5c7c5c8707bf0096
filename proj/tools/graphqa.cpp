// Command-line front end: ingest checks, evidence extraction, training,
// evaluation, attention reports, and the ablation lattice.
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphqa/dataset.hpp"
#include "graphqa/pipeline.hpp"

namespace {

struct StoreOptions {
  std::string triples;
  std::string templates;
  std::string corpus;
  std::string stopwords;
  std::string srl_file;  // optional external SRL replay file
};

struct ConfigOptions {
  std::string sources = "both";
  std::string topo = "on";
  std::string graph_inference = "on";
  int max_hops = 2;
  int top_k = 10;
  int max_len = 256;
  bool wiki_first = false;
};

struct ModelOptions {
  int dim = 128;
  int reduced_dim = 64;
  int layers = 1;
  int mlp_hidden = 64;
};

void add_config_flags(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--sources", opts.sources, "Evidence sources: none|concept|wiki|both")
      ->check(CLI::IsMember({"none", "concept", "wiki", "both"}));
  cmd->add_option("--topo-sort", opts.topo, "Topology-sort evidence units: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--graph-inference", opts.graph_inference, "Graph reasoning: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--max-hops", opts.max_hops, "Maximum path length in triples")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--top-k", opts.top_k, "Sentences to retrieve per question/choice")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-len", opts.max_len, "Maximum assembled sequence length")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--wiki-first", opts.wiki_first, "Place wiki evidence before concept evidence");
}

void add_store_flags(CLI::App* cmd, StoreOptions& opts, bool need_concept, bool need_corpus) {
  auto* triples = cmd->add_option("--triples", opts.triples, "Triple dump (TSV)");
  auto* templates = cmd->add_option("--templates", opts.templates, "Relation template table (TSV)");
  auto* corpus = cmd->add_option("--corpus", opts.corpus, "Sentence corpus, one per line");
  auto* stop = cmd->add_option("--stopwords", opts.stopwords, "Stopword list, one per line");
  cmd->add_option("--srl-file", opts.srl_file, "Replay SRL spans from a file instead of the "
                                               "built-in pattern extractor");
  if (need_concept) {
    triples->required();
    templates->required();
  }
  if (need_corpus) corpus->required();
  stop->required();
}

graphqa::ExtractionConfig make_config(const ConfigOptions& opts) {
  graphqa::ExtractionConfig config;
  config.sources = graphqa::parse_sources(opts.sources);
  config.topo_sort = opts.topo == "on";
  config.graph_inference = opts.graph_inference == "on";
  config.max_hops = opts.max_hops;
  config.top_k = opts.top_k;
  config.max_len = opts.max_len;
  config.wiki_first = opts.wiki_first;
  return config;
}

struct Stores {
  graphqa::TripleStore store;
  graphqa::SentenceCorpus corpus;
  graphqa::InvertedIndex index;
  graphqa::StopwordSet stopwords;
  std::unique_ptr<graphqa::SrlAdapter> srl;
  graphqa::ParseReport triple_report;
};

Stores load_stores(const StoreOptions& opts, const graphqa::ExtractionConfig& config) {
  Stores s;
  s.stopwords = graphqa::StopwordSet::from_file(opts.stopwords);
  const bool need_concept =
      config.sources == graphqa::Sources::concept_net || config.sources == graphqa::Sources::both;
  const bool need_wiki =
      config.sources == graphqa::Sources::wiki || config.sources == graphqa::Sources::both;
  if (need_concept) {
    s.store = graphqa::parse_triple_dump_file(opts.triples, &s.triple_report);
    graphqa::load_relation_templates_file(opts.templates, s.store);
  }
  if (need_wiki) {
    s.corpus = graphqa::load_corpus_file(opts.corpus);
    s.index = graphqa::build_index(s.corpus, s.stopwords);
  }
  if (!opts.srl_file.empty())
    s.srl = std::make_unique<graphqa::FileSrlAdapter>(
        graphqa::FileSrlAdapter::from_file(opts.srl_file));
  else
    s.srl = std::make_unique<graphqa::PatternSrlAdapter>();
  return s;
}

int run_ingest_concept(const std::string& triples_path, const std::string& templates_path) {
  graphqa::ParseReport report;
  graphqa::TripleStore store = graphqa::parse_triple_dump_file(triples_path, &report);
  graphqa::load_relation_templates_file(templates_path, store);
  std::cout << "triples parsed:  " << report.parsed << "\n"
            << "lines skipped:   " << report.skipped << "\n"
            << "entities:        " << store.entities.size() << "\n"
            << "templates:       " << store.templates.size() << "\n";
  for (std::size_t i = 0; i < report.errors.size() && i < 10; ++i)
    std::cerr << "  skipped: " << report.errors[i] << "\n";
  if (report.errors.size() > 10)
    std::cerr << "  ... " << (report.errors.size() - 10) << " more\n";
  return 0;
}

int run_ingest_corpus(const std::string& corpus_path, const std::string& stopwords_path) {
  const auto stopwords = graphqa::StopwordSet::from_file(stopwords_path);
  const auto corpus = graphqa::load_corpus_file(corpus_path);
  const auto index = graphqa::build_index(corpus, stopwords);
  std::cout << "sentences:       " << corpus.sentences.size() << "\n"
            << "indexed terms:   " << index.postings.size() << "\n"
            << "avg doc length:  " << index.avg_doc_length << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidence-graph question answering pipeline"};
  app.require_subcommand(1);

  // ingest-concept ----------------------------------------------------------
  std::string ic_triples, ic_templates;
  auto* ingest_concept = app.add_subcommand("ingest-concept", "Parse and validate a triple dump");
  ingest_concept->add_option("--triples", ic_triples)->required();
  ingest_concept->add_option("--templates", ic_templates)->required();

  // ingest-corpus -----------------------------------------------------------
  std::string ik_corpus, ik_stopwords;
  auto* ingest_corpus = app.add_subcommand("ingest-corpus", "Load a corpus and build the index");
  ingest_corpus->add_option("--corpus", ik_corpus)->required();
  ingest_corpus->add_option("--stopwords", ik_stopwords)->required();

  // extract -------------------------------------------------------------
  std::string ex_dataset, ex_cache_dir = "cache";
  StoreOptions ex_stores;
  ConfigOptions ex_config;
  auto* extract = app.add_subcommand("extract", "Extract and cache evidence for a dataset");
  extract->add_option("--dataset", ex_dataset)->required();
  extract->add_option("--cache-dir", ex_cache_dir);
  add_store_flags(extract, ex_stores, false, false);
  add_config_flags(extract, ex_config);

  // train ---------------------------------------------------------------
  std::string tr_dataset, tr_cache_dir = "cache", tr_checkpoint = "reasoner.ckpt";
  ConfigOptions tr_config;
  ModelOptions tr_model;
  int tr_steps = 200, tr_batch = 4;
  double tr_lr = 1e-3;
  std::uint64_t tr_seed = 0;
  auto* train_cmd = app.add_subcommand("train", "Train the reasoner on cached evidence");
  train_cmd->add_option("--dataset", tr_dataset)->required();
  train_cmd->add_option("--cache-dir", tr_cache_dir);
  train_cmd->add_option("--checkpoint", tr_checkpoint, "Where to save the trained model");
  train_cmd->add_option("--steps", tr_steps)->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch-size", tr_batch)->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", tr_lr);
  train_cmd->add_option("--seed", tr_seed);
  train_cmd->add_option("--dim", tr_model.dim)->check(CLI::PositiveNumber);
  train_cmd->add_option("--reduced-dim", tr_model.reduced_dim)->check(CLI::PositiveNumber);
  train_cmd->add_option("--layers", tr_model.layers)->check(CLI::PositiveNumber);
  train_cmd->add_option("--mlp-hidden", tr_model.mlp_hidden)->check(CLI::PositiveNumber);
  add_config_flags(train_cmd, tr_config);

  // eval ------------------------------------------------------------------
  std::string ev_dataset, ev_cache_dir = "cache", ev_checkpoint;
  ConfigOptions ev_config;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on cached evidence");
  eval_cmd->add_option("--dataset", ev_dataset)->required();
  eval_cmd->add_option("--cache-dir", ev_cache_dir);
  eval_cmd->add_option("--checkpoint", ev_checkpoint)->required();
  add_config_flags(eval_cmd, ev_config);

  // explain ---------------------------------------------------------------
  std::string xp_dataset, xp_cache_dir = "cache", xp_checkpoint, xp_instance, xp_out;
  ConfigOptions xp_config;
  auto* explain_cmd = app.add_subcommand("explain", "Emit an attention report for one instance");
  explain_cmd->add_option("--dataset", xp_dataset)->required();
  explain_cmd->add_option("--cache-dir", xp_cache_dir);
  explain_cmd->add_option("--checkpoint", xp_checkpoint)->required();
  explain_cmd->add_option("--instance", xp_instance, "Instance id to explain")->required();
  explain_cmd->add_option("--out", xp_out, "Report path prefix (default explain-<id>)");
  add_config_flags(explain_cmd, xp_config);

  // ablate ------------------------------------------------------------------
  std::string ab_dataset, ab_cache_dir = "cache";
  StoreOptions ab_stores;
  ConfigOptions ab_config;
  ModelOptions ab_model;
  int ab_steps = 50;
  std::uint64_t ab_seed = 0;
  auto* ablate = app.add_subcommand(
      "ablate", "Run extract+train+eval across the source/sort/inference lattice");
  ablate->add_option("--dataset", ab_dataset)->required();
  ablate->add_option("--cache-dir", ab_cache_dir);
  ablate->add_option("--steps", ab_steps)->check(CLI::PositiveNumber);
  ablate->add_option("--seed", ab_seed);
  ablate->add_option("--dim", ab_model.dim)->check(CLI::PositiveNumber);
  ablate->add_option("--reduced-dim", ab_model.reduced_dim)->check(CLI::PositiveNumber);
  ablate->add_option("--layers", ab_model.layers)->check(CLI::PositiveNumber);
  ablate->add_option("--mlp-hidden", ab_model.mlp_hidden)->check(CLI::PositiveNumber);
  add_store_flags(ablate, ab_stores, true, true);
  add_config_flags(ablate, ab_config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest_concept) return run_ingest_concept(ic_triples, ic_templates);
    if (*ingest_corpus) return run_ingest_corpus(ik_corpus, ik_stopwords);

    if (*extract) {
      const auto config = make_config(ex_config);
      const bool need_concept = config.sources == graphqa::Sources::concept_net ||
                                config.sources == graphqa::Sources::both;
      const bool need_wiki =
          config.sources == graphqa::Sources::wiki || config.sources == graphqa::Sources::both;
      if (need_concept && (ex_stores.triples.empty() || ex_stores.templates.empty()))
        throw std::invalid_argument("--triples/--templates required for sources=" +
                                    to_string(config.sources));
      if (need_wiki && ex_stores.corpus.empty())
        throw std::invalid_argument("--corpus required for sources=" + to_string(config.sources));

      const auto instances = graphqa::load_dataset(ex_dataset);
      auto stores = load_stores(ex_stores, config);
      graphqa::ExtractionContext ctx{&stores.store, &stores.corpus, &stores.index,
                                     &stores.stopwords, stores.srl.get()};
      auto cache = graphqa::EvidenceCache::open(ex_cache_dir, graphqa::config_hash(config));
      const auto stats = graphqa::run_extraction(instances, ctx, config, cache);
      cache.save();
      std::cout << "instances:   " << instances.size() << "\n"
                << "computed:    " << stats.computed << "\n"
                << "cache hits:  " << stats.cache_hits << "\n"
                << "failures:    " << stats.failures << "\n"
                << "cache file:  " << cache.file_path() << "\n";
      return 0;
    }

    if (*train_cmd) {
      const auto config = make_config(tr_config);
      const auto instances = graphqa::load_dataset(tr_dataset);
      const auto cache = graphqa::EvidenceCache::open(tr_cache_dir, graphqa::config_hash(config));
      graphqa::ToyEncoder encoder;
      encoder.d = tr_model.dim;
      auto params = graphqa::init_params(tr_model.dim, tr_model.reduced_dim, tr_model.layers,
                                         tr_model.mlp_hidden, tr_seed);
      auto adam = graphqa::init_adam(params, tr_lr);
      graphqa::TrainOptions options;
      options.steps = tr_steps;
      options.batch_size = tr_batch;
      options.learning_rate = tr_lr;
      options.seed = tr_seed;
      const auto result = graphqa::train(instances, cache, encoder, config, options, params, adam);
      graphqa::save_checkpoint(tr_checkpoint, params, &adam);
      std::cout << "steps:            " << result.steps_run << "\n"
                << "final loss:       " << (result.losses.empty() ? 0.0 : result.losses.back())
                << "\n"
                << "train accuracy:   " << result.train_accuracy << "\n"
                << "checkpoint:       " << tr_checkpoint << "\n";
      return 0;
    }

    if (*eval_cmd) {
      const auto config = make_config(ev_config);
      const auto instances = graphqa::load_dataset(ev_dataset);
      const auto cache = graphqa::EvidenceCache::open(ev_cache_dir, graphqa::config_hash(config));
      const auto ckpt = graphqa::load_checkpoint(ev_checkpoint);
      graphqa::ToyEncoder encoder;
      encoder.d = ckpt.params.d;
      const auto result = graphqa::evaluate(instances, cache, encoder, config, ckpt.params);
      std::cout << "instances:  " << result.total << "\n"
                << "correct:    " << result.correct << "\n"
                << "accuracy:   " << result.accuracy << "\n";
      return 0;
    }

    if (*explain_cmd) {
      const auto config = make_config(xp_config);
      const auto instances = graphqa::load_dataset(xp_dataset);
      const auto cache = graphqa::EvidenceCache::open(xp_cache_dir, graphqa::config_hash(config));
      const auto ckpt = graphqa::load_checkpoint(xp_checkpoint);
      graphqa::ToyEncoder encoder;
      encoder.d = ckpt.params.d;

      const graphqa::QAInstance* target = nullptr;
      for (const auto& instance : instances)
        if (instance.id == xp_instance) target = &instance;
      if (!target) throw std::runtime_error("instance '" + xp_instance + "' not in dataset");

      const auto report = graphqa::explain(*target, cache, encoder, config, ckpt.params);
      const std::string prefix = xp_out.empty() ? "explain-" + xp_instance : xp_out;
      std::ofstream json_out(prefix + ".json");
      json_out << graphqa::explanation_to_json(report);
      std::ofstream text_out(prefix + ".txt");
      const std::string table = graphqa::explanation_to_table(report);
      text_out << table;
      std::cout << table;
      std::cout << "reports: " << prefix << ".json, " << prefix << ".txt\n";
      return 0;
    }

    if (*ablate) {
      const auto instances = graphqa::load_dataset(ab_dataset);
      std::printf("%-8s %-5s %-9s %-9s %s\n", "sources", "sort", "inference", "accuracy",
                  "final-loss");
      for (const std::string& sources : {"none", "concept", "wiki", "both"}) {
        for (bool sort_on : {true, false}) {
          for (bool inference_on : {true, false}) {
            ConfigOptions opts = ab_config;
            opts.sources = sources;
            opts.topo = sort_on ? "on" : "off";
            opts.graph_inference = inference_on ? "on" : "off";
            const auto config = make_config(opts);
            auto stores = load_stores(ab_stores, config);
            graphqa::ExtractionContext ctx{&stores.store, &stores.corpus, &stores.index,
                                           &stores.stopwords, stores.srl.get()};
            auto cache = graphqa::EvidenceCache::open(ab_cache_dir, graphqa::config_hash(config));
            graphqa::run_extraction(instances, ctx, config, cache);
            cache.save();

            graphqa::ToyEncoder encoder;
            encoder.d = ab_model.dim;
            auto params = graphqa::init_params(ab_model.dim, ab_model.reduced_dim,
                                               ab_model.layers, ab_model.mlp_hidden, ab_seed);
            auto adam = graphqa::init_adam(params, 1e-3);
            graphqa::TrainOptions options;
            options.steps = ab_steps;
            options.seed = ab_seed;
            const auto trained =
                graphqa::train(instances, cache, encoder, config, options, params, adam);
            const auto result = graphqa::evaluate(instances, cache, encoder, config, params);
            std::printf("%-8s %-5s %-9s %-9.4f %.4f\n", sources.c_str(),
                        sort_on ? "on" : "off", inference_on ? "on" : "off", result.accuracy,
                        trained.losses.empty() ? 0.0 : trained.losses.back());
          }
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
