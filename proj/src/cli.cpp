#include "corekg/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "corekg/baseline.hpp"
#include "corekg/checkpoint.hpp"
#include "corekg/config.hpp"
#include "corekg/dataset.hpp"
#include "corekg/evaluation.hpp"
#include "corekg/training.hpp"
#include "corekg/util.hpp"

namespace corekg {
namespace {

std::string resolve_data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv("CORE_KGT_DATA");
  if (env && *env) return env;
  throw std::runtime_error("no data directory: pass --data-dir or set CORE_KGT_DATA");
}

int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::uint64_t file_fnv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::uint64_t h = kFnvOffset;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h = fnv1a64_bytes(buf, static_cast<std::size_t>(in.gcount()), h);
  }
  return h;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string git_describe() {
  FILE* p = popen("git describe --always --dirty 2>/dev/null", "r");
  if (!p) return "";
  char buf[256];
  std::string out;
  while (fgets(buf, sizeof buf, p)) out += buf;
  pclose(p);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out;
}

nlohmann::json config_json(const TrainConfig& c) {
  nlohmann::json j;
  j["model"] = model_kind_name(c.model_kind);
  j["k"] = c.k;
  j["l"] = c.l;
  j["Ebz"] = c.entity_batch;
  j["Tbz"] = c.type_batch;
  j["Nsz"] = c.neg_size;
  j["alpha1"] = c.alpha1;
  j["alpha2"] = c.alpha2;
  j["alpha3"] = c.alpha3;
  j["gamma1"] = c.gamma1;
  j["gamma2"] = c.gamma2;
  j["gamma3"] = c.gamma3;
  j["eta1"] = c.lr;
  j["lr_decay"] = c.lr_decay;
  j["total_steps"] = c.total_steps;
  j["alternation_period"] = c.alternation_period;
  j["warmup_steps"] = c.warmup_steps;
  j["seed"] = c.seed;
  j["checkpoint_interval"] = c.checkpoint_interval;
  return j;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const TrainConfig& cfg, const std::string& data_dir) {
  DatasetSchema schema;
  nlohmann::json files;
  for (const auto& name : {schema.kg_train, schema.kg_valid, schema.kg_test, schema.tp_train,
                           schema.tp_valid, schema.tp_test})
    files[name] = hex_u64(file_fnv(data_dir + "/" + name));
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config_json(cfg);
  j["data_dir"] = data_dir;
  j["data_files"] = files;
  j["seed"] = cfg.seed;
  std::string desc = git_describe();
  j["git_describe"] = desc.empty() ? nlohmann::json(nullptr) : nlohmann::json(desc);
  j["created_utc"] = utc_now();
  std::ofstream out(out_dir + "/manifest.json");
  if (!out) throw std::runtime_error("cannot open for writing: " + out_dir + "/manifest.json");
  out << j.dump(2) << "\n";
}

nlohmann::json report_json(const RankingReport& r) {
  nlohmann::json j;
  j["mrr"] = r.mrr;
  j["hits@1"] = r.hits1;
  j["hits@3"] = r.hits3;
  j["hits@10"] = r.hits10;
  j["n_queries"] = r.n_queries;
  return j;
}

void print_report(const RankingReport& r) {
  std::printf("MRR      %.6f\n", r.mrr);
  std::printf("Hits@1   %.6f\n", r.hits1);
  std::printf("Hits@3   %.6f\n", r.hits3);
  std::printf("Hits@10  %.6f\n", r.hits10);
  std::printf("queries  %lld\n", static_cast<long long>(r.n_queries));
}

void write_report(const std::string& path, const RankingReport& r, const nlohmann::json& extra) {
  nlohmann::json j = report_json(r);
  for (auto& [key, val] : extra.items()) j[key] = val;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

void write_ranks_tsv(const std::string& path, const RankingReport& r, const TripleStore& store) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& q : r.per_query)
    out << store.entities.name(q.entity) << '\t' << store.types.name(q.true_type) << '\t'
        << q.rank << '\n';
}

std::span<const TypePair> split_queries(const TripleStore& store, const std::string& split) {
  return split == "valid" ? std::span<const TypePair>(store.tp_valid)
                          : std::span<const TypePair>(store.tp_test);
}

void check_vocab_match(const CheckpointMeta& meta, const TripleStore& store) {
  if (meta.entity_hash != store.entities.hash() || meta.relation_hash != store.relations.hash() ||
      meta.type_hash != store.types.hash())
    throw std::runtime_error(
        "checkpoint does not match this dataset (vocabulary hash mismatch)");
}

TrainConfig load_config_with_overrides(const std::string& config_path, const std::string& mode,
                                       std::uint64_t seed, bool seed_set) {
  TrainConfig cfg = parse_config_file(config_path);
  if (!mode.empty()) {
    cfg.model_kind = mode == "rotate" ? ModelKind::kRotatE : ModelKind::kComplEx;
  }
  if (seed_set) cfg.seed = seed;
  cfg.validate();
  return cfg;
}

void run_one_training(const TrainConfig& cfg, const TripleStore& store,
                      const std::string& out_dir, const std::string& data_dir, int threads) {
  std::filesystem::create_directories(out_dir);
  write_manifest(out_dir, "train", cfg, data_dir);
  std::ofstream log(out_dir + "/train_log.jsonl");
  if (!log) throw std::runtime_error("cannot open for writing: " + out_dir + "/train_log.jsonl");
  Trainer trainer(cfg, store, threads);
  TrainOptions opts;
  opts.threads = threads;
  opts.out_dir = out_dir;
  opts.log = &log;
  opts.manifest_ref = "manifest.json";
  run_training(trainer, store, opts);
  std::printf("trained %lld steps, checkpoint at %s/checkpoint.bin\n",
              static_cast<long long>(trainer.step()), out_dir.c_str());
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"entity and type embedding toolkit"};
  app.require_subcommand(1);

  std::string data_dir, config_path, checkpoint_path, out_path, ranks_out, mode, baseline_mode;
  std::string split = "test";
  std::string entity_name, dims_arg;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = default_threads();
  std::int64_t top_n = 10;

  auto add_common = [&](CLI::App* cmd, bool with_threads = true) {
    cmd->add_option("--data-dir", data_dir, "dataset directory (default: $CORE_KGT_DATA)");
    if (with_threads) cmd->add_option("--threads", threads, "worker threads");
  };

  auto* gen = app.add_subcommand("gen-type-triples",
                                 "derive type triples from the train split");
  add_common(gen, false);
  gen->add_option("--out", out_path, "output file")->required();

  auto* train = app.add_subcommand("train", "train a model");
  add_common(train);
  train->add_option("--config", config_path, "config file")->required();
  train->add_option("--out", out_path, "output directory")->required();
  train->add_option("--mode", mode, "model kind override")
      ->check(CLI::IsMember({"rotate", "complex"}));
  train->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
    seed_set = true;
  });

  auto* eval = app.add_subcommand("eval", "rank held-out type assertions");
  add_common(eval);
  eval->add_option("--checkpoint", checkpoint_path, "trained checkpoint")->required();
  eval->add_option("--split", split, "evaluation split")
      ->check(CLI::IsMember({"valid", "test"}));
  eval->add_option("--out", out_path, "write the report as JSON here");
  eval->add_option("--ranks-out", ranks_out, "write per-query ranks as TSV here");

  auto* predict = app.add_subcommand("predict", "rank types for one entity");
  add_common(predict, false);
  predict->add_option("--checkpoint", checkpoint_path, "trained checkpoint")->required();
  predict->add_option("entity", entity_name, "entity name")->required();
  predict->add_option("top", top_n, "how many types to print");

  auto* baseline = app.add_subcommand("baseline", "counting baselines");
  add_common(baseline);
  baseline->add_option("--baseline", baseline_mode, "baseline variant")
      ->check(CLI::IsMember({"sdtype", "sdtype-cond"}))
      ->required();
  baseline->add_option("--split", split, "evaluation split")
      ->check(CLI::IsMember({"valid", "test"}));
  baseline->add_option("--out", out_path, "write the report as JSON here");

  auto* sweep = app.add_subcommand("dim-sweep", "train once per type dimension");
  add_common(sweep);
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--out", out_path, "output directory")->required();
  sweep->add_option("--dims", dims_arg, "comma-separated type dimensions")->required();
  sweep->add_option("--mode", mode, "model kind override")
      ->check(CLI::IsMember({"rotate", "complex"}));
  sweep->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
    seed_set = true;
  });

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    TripleStore store = load_dataset(resolve_data_dir(data_dir));
    auto triples = generate_type_triples(store);
    write_type_triples(out_path, triples, store);
    std::printf("type triples: %zu\n", triples.size());
    return 0;
  }

  if (train->parsed()) {
    std::string dir = resolve_data_dir(data_dir);
    TrainConfig cfg = load_config_with_overrides(config_path, mode, seed, seed_set);
    TripleStore store = load_dataset(dir);
    run_one_training(cfg, store, out_path, dir, threads);
    return 0;
  }

  if (eval->parsed()) {
    TripleStore store = load_dataset(resolve_data_dir(data_dir));
    LoadedCheckpoint ckpt = load_checkpoint(checkpoint_path);
    check_vocab_match(ckpt.meta, store);
    ModelTypeScorer scorer(ckpt.model);
    RankingReport report = evaluate(split_queries(store, split), scorer, store, threads);
    print_report(report);
    if (!out_path.empty())
      write_report(out_path, report,
                   {{"split", split}, {"model", model_kind_name(ckpt.model.kind)}});
    if (!ranks_out.empty()) write_ranks_tsv(ranks_out, report, store);
    return 0;
  }

  if (predict->parsed()) {
    TripleStore store = load_dataset(resolve_data_dir(data_dir));
    LoadedCheckpoint ckpt = load_checkpoint(checkpoint_path);
    check_vocab_match(ckpt.meta, store);
    auto id = store.entities.find(entity_name);
    if (!id) throw std::runtime_error("unknown entity: " + entity_name);
    ModelTypeScorer scorer(ckpt.model);
    for (const auto& [t, s] : top_types(*id, scorer, top_n))
      std::printf("%s\t%.6g\n", store.types.name(t).c_str(), s);
    return 0;
  }

  if (baseline->parsed()) {
    TripleStore store = load_dataset(resolve_data_dir(data_dir));
    ConditionalTypeTable table = fit_type_table(store);
    BaselineMode bm =
        baseline_mode == "sdtype" ? BaselineMode::kSDType : BaselineMode::kSDTypeCond;
    RankingReport report = evaluate_baseline(split_queries(store, split), store, table, bm,
                                             threads);
    print_report(report);
    if (!out_path.empty())
      write_report(out_path, report, {{"split", split}, {"baseline", baseline_mode}});
    return 0;
  }

  if (sweep->parsed()) {
    std::string dir = resolve_data_dir(data_dir);
    TrainConfig base_cfg = load_config_with_overrides(config_path, mode, seed, seed_set);
    TripleStore store = load_dataset(dir);

    std::vector<std::int64_t> dims;
    std::istringstream ds(dims_arg);
    std::string tok;
    while (std::getline(ds, tok, ','))
      if (!tok.empty()) dims.push_back(std::stoll(tok));
    if (dims.empty()) throw std::runtime_error("--dims is empty");

    std::filesystem::create_directories(out_path);
    write_manifest(out_path, "dim-sweep", base_cfg, dir);
    nlohmann::json summary = nlohmann::json::array();
    for (std::int64_t d : dims) {
      TrainConfig cfg = base_cfg;
      cfg.l = d;
      cfg.validate();
      std::string sub = out_path + "/dim_" + std::to_string(d);
      run_one_training(cfg, store, sub, dir, threads);
      LoadedCheckpoint ckpt = load_checkpoint(sub + "/checkpoint.bin");
      ModelTypeScorer scorer(ckpt.model);
      RankingReport report = evaluate(store.tp_valid, scorer, store, threads);
      write_report(sub + "/report.json", report, {{"split", "valid"}, {"l", d}});
      nlohmann::json row = report_json(report);
      row["l"] = d;
      summary.push_back(row);
      std::printf("l=%lld valid MRR %.6f\n", static_cast<long long>(d), report.mrr);
    }
    std::ofstream sf(out_path + "/sweep.json");
    if (!sf) throw std::runtime_error("cannot open for writing: " + out_path + "/sweep.json");
    sf << summary.dump(2) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("corekg");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace corekg
