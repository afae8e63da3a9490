// Copyright 2026 The tempret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tempret/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <ostream>

#include "CLI11.hpp"
#include "tempret/error.hpp"
#include "tempret/evaluation.hpp"
#include "tempret/io.hpp"

namespace tempret::cli {

namespace {

namespace fs = std::filesystem;

// Raised while resolving arguments; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RetrievalFlags {
  std::string mode;
  std::size_t top_k = 0;
  double alpha = 0.0;
  std::size_t over_retrieve_factor = 0;
  EpochDay min_delta_days = 0;
  std::string stats_scope;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* top_k_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* factor_opt = nullptr;
  CLI::Option* min_delta_opt = nullptr;
  CLI::Option* scope_opt = nullptr;
  CLI::Option* no_mask_opt = nullptr;
  CLI::Option* no_suffix_opt = nullptr;

  void add_to(CLI::App* app) {
    mode_opt = app->add_option("--mode", mode, "semantic_only or temporal");
    top_k_opt = app->add_option("--top-k", top_k, "passages to return");
    alpha_opt = app->add_option("--alpha", alpha, "temporal alpha_scale");
    factor_opt = app->add_option("--over-retrieve-factor", over_retrieve_factor,
                                 "candidates = factor * top_k");
    min_delta_opt = app->add_option("--min-delta-days", min_delta_days,
                                    "lower clamp on the query/document day gap");
    scope_opt = app->add_option("--stats-scope", stats_scope, "query or global");
    no_mask_opt = app->add_flag("--no-mask-future", "keep passages dated after the query");
    no_suffix_opt = app->add_flag("--no-time-suffix",
                                  "do not append the timestamp to the question text");
  }

  void apply(RetrievalConfig& cfg) const {
    if (mode_opt->count()) {
      const auto m = parse_mode(mode);
      if (!m) throw UsageError("unknown --mode \"" + mode + "\"");
      cfg.mode = *m;
    }
    if (top_k_opt->count()) cfg.top_k = top_k;
    if (alpha_opt->count()) cfg.temporal.alpha_scale = alpha;
    if (factor_opt->count()) cfg.over_retrieve_factor = over_retrieve_factor;
    if (min_delta_opt->count()) cfg.temporal.min_delta_days = min_delta_days;
    if (scope_opt->count()) {
      const auto s = parse_stats_scope(stats_scope);
      if (!s) throw UsageError("unknown --stats-scope \"" + stats_scope + "\"");
      cfg.stats_scope = *s;
    }
    if (no_mask_opt->count()) cfg.mask_future = false;
    if (no_suffix_opt->count()) cfg.time_suffix_query = false;
  }
};

struct EncoderFlags {
  std::size_t dimension = 0;
  std::uint64_t seed = 0;
  CLI::Option* dim_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void add_to(CLI::App* app) {
    dim_opt = app->add_option("--dim", dimension, "embedding dimension");
    seed_opt = app->add_option("--hash-seed", seed, "feature hash seed");
  }
  void apply(RunConfig& cfg) const {
    if (dim_opt->count()) cfg.dimension = dimension;
    if (seed_opt->count()) cfg.hash_seed = seed;
  }
};

template <typename T>
void set_if(const CLI::Option* opt, const T& value, T& target) {
  if (opt->count()) target = value;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::pair<int, int> parse_year_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    const int a = std::stoi(s.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(s);
    const std::string rest = s.substr(colon + 1);
    const int b = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--year-range expects START:END, got \"" + s + "\"");
  }
}

HashingEncoder make_encoder(const RunConfig& cfg) {
  return HashingEncoder(cfg.dimension, cfg.hash_seed);
}

void resolve_paths(RunConfig& cfg) {
  if (cfg.out_dir.empty()) cfg.out_dir = cfg.data_dir;
  if (cfg.corpus.empty()) cfg.corpus = cfg.data_dir / "corpus.jsonl";
  if (cfg.index.empty()) cfg.index = cfg.data_dir / "index.bin";
  if (cfg.report.empty()) cfg.report = cfg.data_dir / "report.json";
  if (cfg.queries.empty()) {
    cfg.queries = {cfg.data_dir / "tpq_early.jsonl", cfg.data_dir / "tpq_late.jsonl"};
  }
}

// --- gen --------------------------------------------------------------------

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const GenSpec& spec = cfg.gen;
  Dataset ds;
  std::string source = "synthetic";
  if (cfg.events.empty()) {
    ds = generate_dataset(spec);
  } else {
    source = "csv";
    ds.events = load_event_csv(cfg.events);
    std::vector<EventRow> train, test;
    for (const EventRow& r : ds.events) {
      if (r.year >= spec.year_start && r.year <= spec.year_end) train.push_back(r);
      if (r.year == spec.test_year) test.push_back(r);
    }
    ds.fewshot = gen_fewshot_splits(train, spec.fewshot_sizes, spec.seed, spec.query_types);
    ds.tpq = gen_tpq_pair(test, spec);
    ds.corpus = build_corpus(ds.events, spec.passages_per_row);
  }

  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + cfg.out_dir.string() + ": " + ec.message());

  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("events.csv", serialize_event_csv(ds.events));
  files.emplace_back("corpus.jsonl", serialize_corpus(ds.corpus));
  files.emplace_back("tpq_early.jsonl", serialize_queries(ds.tpq.tpq_early));
  files.emplace_back("tpq_late.jsonl", serialize_queries(ds.tpq.tpq_late));
  for (std::size_t i = 0; i < ds.fewshot.size(); ++i) {
    files.emplace_back("fewshot_" + std::to_string(spec.fewshot_sizes[i]) + ".jsonl",
                       serialize_queries(ds.fewshot[i]));
  }

  nlohmann::ordered_json manifest;
  manifest["schema_version"] = kReportSchemaVersion;
  manifest["template_version"] = kTemplateVersion;
  manifest["events_source"] = source;
  manifest["gen_spec"] = to_json(spec);
  manifest["counts"] = {{"events", ds.events.size()},
                        {"passages", ds.corpus.size()},
                        {"tpq_queries", ds.tpq.tpq_early.size()}};
  auto& hashes = manifest["files"] = nlohmann::ordered_json::object();
  for (const auto& [name, contents] : files) {
    write_file(cfg.out_dir / name, contents);
    hashes[name] = sha256_hex(contents);
  }
  write_file(cfg.out_dir / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << ds.corpus.size() << " passages, " << ds.tpq.tpq_early.size()
      << " TPQ query pairs and " << ds.fewshot.size() << " few-shot splits to "
      << cfg.out_dir.string() << "\n";
  return kExitOk;
}

// --- index ------------------------------------------------------------------

int cmd_index(const RunConfig& cfg, std::ostream& out) {
  const HashingEncoder encoder = make_encoder(cfg);
  const Index index = build_index(load_corpus(cfg.corpus), encoder, cfg.threads);
  if (cfg.index.has_parent_path()) fs::create_directories(cfg.index.parent_path());
  save_index(index, cfg.index);
  out << "indexed " << index.size() << " passages (" << index.encoder_fingerprint()
      << ") -> " << cfg.index.string() << "\n";
  return kExitOk;
}

// --- search -----------------------------------------------------------------

int cmd_search(const RunConfig& cfg, const std::string& question, const CivilDate& ts,
               std::ostream& out) {
  const HashingEncoder encoder = make_encoder(cfg);
  const Index index = load_index(cfg.index, load_corpus(cfg.corpus), encoder);
  const auto results =
      retrieve(index, query_text_for(question, ts, cfg.retrieval), ts, cfg.retrieval, encoder);

  nlohmann::ordered_json j;
  j["question"] = question;
  j["timestamp"] = format_date(ts);
  j["retrieval"] = retrieval_to_json(cfg.retrieval);
  auto& arr = j["results"] = nlohmann::ordered_json::array();
  for (const ScoredPassage& sp : results) {
    nlohmann::ordered_json r;
    r["rank"] = sp.rank;
    r["passage_id"] = sp.passage_id;
    r["date"] = format_date(sp.date);
    r["semantic"] = sp.semantic;
    r["temporal_normalized"] = sp.temporal_normalized
                                   ? nlohmann::ordered_json(*sp.temporal_normalized)
                                   : nlohmann::ordered_json(nullptr);
    r["combined"] = sp.combined;
    r["text"] = index.corpus().at(*index.corpus().find(sp.passage_id)).text;
    arr.push_back(std::move(r));
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

// --- eval -------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const HashingEncoder encoder = make_encoder(cfg);
  const std::string corpus_text = read_file(cfg.corpus);
  const Index index = load_index(cfg.index, parse_corpus(corpus_text), encoder);
  std::optional<Predictions> predictions;
  if (!cfg.predictions.empty()) predictions = load_predictions(cfg.predictions);

  std::vector<RetrievalMode> modes = {cfg.retrieval.mode};
  if (cfg.compare) modes = {RetrievalMode::kSemanticOnly, RetrievalMode::kTemporal};

  nlohmann::ordered_json report;
  report["schema_version"] = kReportSchemaVersion;
  if (!cfg.no_clock) report["generated_at"] = utc_now();

  nlohmann::ordered_json config;
  config["retrieval"] = retrieval_to_json(cfg.retrieval);
  config["compare"] = cfg.compare;
  config["encoder"] = {{"fingerprint", encoder.fingerprint()},
                       {"dimension", cfg.dimension},
                       {"hash_seed", cfg.hash_seed}};
  config["corpus"] = {{"file", cfg.corpus.filename().string()},
                      {"sha256", sha256_hex(corpus_text)},
                      {"passages", index.size()}};
  config["index"] = {{"file", cfg.index.filename().string()}};
  config["predictions"] = cfg.predictions.empty()
                              ? nlohmann::ordered_json(nullptr)
                              : nlohmann::ordered_json(cfg.predictions.filename().string());
  config["threads"] = cfg.threads;
  nlohmann::ordered_json qsets = nlohmann::ordered_json::array();

  std::vector<NamedReport> named;
  auto& results = report["results"] = nlohmann::ordered_json::array();
  for (const fs::path& qpath : cfg.queries) {
    const std::string qtext = read_file(qpath);
    const std::vector<Query> queries = parse_queries(qtext);
    qsets.push_back({{"file", qpath.filename().string()}, {"sha256", sha256_hex(qtext)}});
    for (RetrievalMode mode : modes) {
      RetrievalConfig rc = cfg.retrieval;
      rc.mode = mode;
      EvalReport r = run_eval(index, queries, rc, encoder,
                              predictions ? &*predictions : nullptr, cfg.threads);
      nlohmann::ordered_json entry;
      entry["query_set"] = qpath.stem().string();
      const nlohmann::ordered_json body = report_to_json(r);
      for (const auto& [k, v] : body.items()) entry[k] = v;
      results.push_back(std::move(entry));
      named.push_back(NamedReport{qpath.stem().string(), std::move(r)});
    }
  }
  config["queries"] = std::move(qsets);
  report["config"] = std::move(config);

  if (cfg.report.has_parent_path()) fs::create_directories(cfg.report.parent_path());
  write_file(cfg.report, report.dump(2) + "\n");
  out << format_recall_table(named);
  return kExitOk;
}

}  // namespace

nlohmann::ordered_json retrieval_to_json(const RetrievalConfig& cfg) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(cfg.mode);
  j["top_k"] = cfg.top_k;
  j["over_retrieve_factor"] = cfg.over_retrieve_factor;
  j["mask_future"] = cfg.mask_future;
  j["alpha_scale"] = cfg.temporal.alpha_scale;
  j["min_delta_days"] = cfg.temporal.min_delta_days;
  j["stats_scope"] = stats_scope_name(cfg.stats_scope);
  j["time_suffix_query"] = cfg.time_suffix_query;
  return j;
}

void apply_config_json(const nlohmann::json& j, RunConfig& cfg) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "data_dir") {
        cfg.data_dir = value.get<std::string>();
      } else if (key == "threads") {
        cfg.threads = value.get<unsigned>();
      } else if (key == "gen") {
        cfg.gen = gen_spec_from_json(value, cfg.gen);
      } else if (key == "encoder") {
        for (const auto& [k, v] : value.items()) {
          if (k == "dimension") cfg.dimension = v.get<std::size_t>();
          else if (k == "hash_seed") cfg.hash_seed = v.get<std::uint64_t>();
          else throw UsageError("unknown encoder key \"" + k + "\"");
        }
      } else if (key == "retrieval") {
        RetrievalConfig& r = cfg.retrieval;
        for (const auto& [k, v] : value.items()) {
          if (k == "mode") {
            const auto m = parse_mode(v.get<std::string>());
            if (!m) throw UsageError("unknown mode \"" + v.get<std::string>() + "\"");
            r.mode = *m;
          } else if (k == "stats_scope") {
            const auto s = parse_stats_scope(v.get<std::string>());
            if (!s) throw UsageError("unknown stats_scope \"" + v.get<std::string>() + "\"");
            r.stats_scope = *s;
          } else if (k == "top_k") r.top_k = v.get<std::size_t>();
          else if (k == "over_retrieve_factor") r.over_retrieve_factor = v.get<std::size_t>();
          else if (k == "mask_future") r.mask_future = v.get<bool>();
          else if (k == "alpha_scale") r.temporal.alpha_scale = v.get<double>();
          else if (k == "min_delta_days") r.temporal.min_delta_days = v.get<EpochDay>();
          else if (k == "time_suffix_query") r.time_suffix_query = v.get<bool>();
          else throw UsageError("unknown retrieval key \"" + k + "\"");
        }
      } else if (key == "paths") {
        for (const auto& [k, v] : value.items()) {
          if (k == "corpus") cfg.corpus = v.get<std::string>();
          else if (k == "index") cfg.index = v.get<std::string>();
          else if (k == "report") cfg.report = v.get<std::string>();
          else if (k == "predictions") cfg.predictions = v.get<std::string>();
          else if (k == "out") cfg.out_dir = v.get<std::string>();
          else if (k == "events") cfg.events = v.get<std::string>();
          else if (k == "queries") {
            cfg.queries.clear();
            for (const auto& q : v.get<std::vector<std::string>>()) cfg.queries.emplace_back(q);
          } else {
            throw UsageError("unknown paths key \"" + k + "\"");
          }
        }
      } else {
        throw UsageError("unknown config key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporally-aware passage retrieval: data generation, indexing, search, "
               "and recall evaluation"};
  app.name(args.empty() ? "tempret" : args[0]);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string data_dir;
  unsigned threads = 1;
  auto* config_opt = app.add_option("--config", config_path, "JSON config file");
  auto* data_dir_opt = app.add_option("--data-dir", data_dir, "default data directory");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads");

  // gen
  CLI::App* gen = app.add_subcommand("gen", "generate events, corpus, TPQ pair, few-shot splits");
  std::string out_dir, year_range, events;
  std::uint64_t seed = 0;
  int test_year = 0;
  std::vector<std::string> tournaments, categories, query_types;
  std::size_t passages_per_row = 0, tpq_size = 0;
  std::vector<std::size_t> fewshot_sizes;
  auto* out_opt = gen->add_option("--out", out_dir, "output directory");
  auto* seed_opt = gen->add_option("--seed", seed, "generator seed");
  auto* range_opt = gen->add_option("--year-range", year_range, "training years START:END");
  auto* test_year_opt = gen->add_option("--test-year", test_year, "year of the TPQ events");
  auto* tourn_opt = gen->add_option("--tournaments", tournaments)->delimiter(',');
  auto* cat_opt = gen->add_option("--categories", categories)->delimiter(',');
  auto* qtype_opt = gen->add_option("--query-types", query_types)->delimiter(',');
  auto* ppr_opt = gen->add_option("--passages-per-row", passages_per_row);
  auto* tpq_opt = gen->add_option("--tpq-size", tpq_size);
  auto* fewshot_opt = gen->add_option("--fewshot-sizes", fewshot_sizes)->delimiter(',');
  auto* events_opt = gen->add_option("--events", events, "event table CSV to use instead");

  // index / search / eval share corpus, index and encoder flags.
  std::string corpus, index_path, question, timestamp, predictions, report;
  std::vector<std::string> queries;
  CLI::App* index = app.add_subcommand("index", "encode a corpus into an index file");
  CLI::App* search = app.add_subcommand("search", "top-k passages for one question");
  CLI::App* eval = app.add_subcommand("eval", "recall@1/@5 (and exact match) over query sets");
  std::vector<CLI::Option*> corpus_opts, index_opts;
  EncoderFlags enc_index, enc_search, enc_eval;
  for (auto [sub, enc] : {std::pair{index, &enc_index}, std::pair{search, &enc_search},
                          std::pair{eval, &enc_eval}}) {
    corpus_opts.push_back(sub->add_option("--corpus", corpus, "corpus JSON-lines"));
    index_opts.push_back(sub->add_option("--index", index_path, "index file"));
    enc->add_to(sub);
  }
  RetrievalFlags rf_search, rf_eval;
  rf_search.add_to(search);
  rf_eval.add_to(eval);
  search->add_option("--question", question, "question text")->required();
  search->add_option("--timestamp", timestamp, "query date YYYY-MM-DD")->required();
  auto* queries_opt = eval->add_option("--queries", queries, "query JSON-lines (repeatable)");
  auto* pred_opt = eval->add_option("--predictions", predictions, "predictions JSON-lines");
  auto* report_opt = eval->add_option("--report", report, "report JSON output");
  auto* compare_opt = eval->add_flag("--compare", "run semantic_only and temporal");
  auto* no_clock_opt = eval->add_flag("--no-clock", "omit the generated_at timestamp");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  RunConfig cfg;
  CivilDate query_ts;
  try {
    if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') {
      cfg.data_dir = env;
    }
    if (config_opt->count()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(config_path));
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("config " + config_path + ": " + e.what());
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      apply_config_json(j, cfg);
    }
    if (data_dir_opt->count()) cfg.data_dir = data_dir;
    set_if(threads_opt, threads, cfg.threads);
    if (cfg.threads == 0) throw UsageError("--threads must be >= 1");

    if (gen->parsed()) {
      GenSpec& g = cfg.gen;
      if (out_opt->count()) cfg.out_dir = out_dir;
      set_if(seed_opt, seed, g.seed);
      if (range_opt->count()) std::tie(g.year_start, g.year_end) = parse_year_range(year_range);
      set_if(test_year_opt, test_year, g.test_year);
      set_if(tourn_opt, tournaments, g.tournaments);
      set_if(cat_opt, categories, g.categories);
      if (qtype_opt->count()) {
        g.query_types.clear();
        for (const std::string& name : query_types) {
          const auto t = parse_query_type(name);
          if (!t) throw UsageError("unknown query type \"" + name + "\"");
          g.query_types.push_back(*t);
        }
      }
      set_if(ppr_opt, passages_per_row, g.passages_per_row);
      set_if(tpq_opt, tpq_size, g.tpq_size);
      set_if(fewshot_opt, fewshot_sizes, g.fewshot_sizes);
      if (events_opt->count()) cfg.events = events;
      // The test year follows an explicitly requested range unless given.
      if (range_opt->count() && !test_year_opt->count()) g.test_year = g.year_end + 1;
      validate(g);
    }
    for (CLI::Option* o : corpus_opts) {
      if (o->count()) cfg.corpus = corpus;
    }
    for (CLI::Option* o : index_opts) {
      if (o->count()) cfg.index = index_path;
    }
    if (index->parsed()) enc_index.apply(cfg);
    if (search->parsed()) {
      enc_search.apply(cfg);
      rf_search.apply(cfg.retrieval);
      query_ts = parse_date(timestamp);
    }
    if (eval->parsed()) {
      enc_eval.apply(cfg);
      rf_eval.apply(cfg.retrieval);
      if (queries_opt->count()) {
        cfg.queries.assign(queries.begin(), queries.end());
      }
      if (pred_opt->count()) cfg.predictions = predictions;
      if (report_opt->count()) cfg.report = report;
      cfg.compare = compare_opt->count() > 0;
      cfg.no_clock = no_clock_opt->count() > 0;
    }
    if (cfg.dimension == 0) throw UsageError("--dim must be >= 1");
    validate(cfg.retrieval);
    resolve_paths(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (index->parsed()) return cmd_index(cfg, out);
    if (search->parsed()) return cmd_search(cfg, question, query_ts, out);
    return cmd_eval(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace tempret::cli
