#include "entvae/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <ctime>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entvae/bvae.hpp"
#include "entvae/io_util.hpp"
#include "entvae/parallel.hpp"
#include "entvae/rng.hpp"

namespace entvae::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check(bool ok, const std::string& msg) {
  if (!ok) throw std::runtime_error(msg);
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json path_entry(const fs::path& p) {
  return json{{"path", p.string()},
              {"fnv1a64", io::fnv1a64_hex(io::read_text_file(p))}};
}

// The manifest is the completion marker, so it is always written last.
void write_manifest(const fs::path& path, const std::string& command,
                    const json& config, std::uint64_t seed,
                    const std::vector<fs::path>& inputs,
                    const std::vector<fs::path>& outputs) {
  json m;
  m["command"] = command;
  m["config"] = config;
  m["generated_at"] = iso_timestamp();
  m["inputs"] = json::array();
  for (const auto& p : inputs) m["inputs"].push_back(path_entry(p));
  m["outputs"] = json::array();
  for (const auto& p : outputs) m["outputs"].push_back(path_entry(p));
  m["seed"] = seed;
  m["tool_version"] = io::kVersion;
  io::write_text_file(path, m.dump(2) + "\n");
}

data::MeasurementSubset parse_subset(const std::string& name) {
  const auto s = data::subset_from_name(name);
  if (!s)
    throw std::invalid_argument("unknown subset name '" + name +
                                "' (expected full, correlated or local)");
  return *s;
}

std::pair<data::LabeledDataset, data::LabeledDataset> load_dataset_pair(
    const fs::path& dir, const char* cmd) {
  const fs::path train_path = dir / "train.csv";
  const fs::path test_path = dir / "test.csv";
  check(fs::exists(train_path),
        std::string(cmd) + ": missing dataset file " + train_path.string());
  check(fs::exists(test_path),
        std::string(cmd) + ": missing dataset file " + test_path.string());
  auto train_ds = data::load_csv(train_path);
  auto test_ds = data::load_csv(test_path);
  check(train_ds.subset == test_ds.subset,
        std::string(cmd) + ": train.csv and test.csv subsets differ");
  return {std::move(train_ds), std::move(test_ds)};
}

}  // namespace

GenDataResult cmd_gen_data(const GenDataOptions& opts) {
  check(opts.n_train >= 2 && opts.n_test >= 2, "gen-data: need at least 2 samples per split");
  fs::create_directories(opts.out_dir);

  data::LabeledDataset train = data::generate(opts.n_train, opts.seed, opts.balanced);
  data::LabeledDataset test =
      data::generate(opts.n_test, opts.seed ^ rng::kTestSeedXor, opts.balanced);
  if (opts.subset != data::MeasurementSubset::Tomographic15) {
    train = data::project(train, opts.subset);
    test = data::project(test, opts.subset);
  }

  GenDataResult res;
  res.train_csv = opts.out_dir / "train.csv";
  res.test_csv = opts.out_dir / "test.csv";
  data::save_csv(train, res.train_csv);
  data::save_csv(test, res.test_csv);

  for (const auto& [path, rows] :
       {std::pair<fs::path, std::size_t>{res.train_csv, opts.n_train},
        {res.test_csv, opts.n_test}}) {
    const data::LabeledDataset back = data::load_csv(path);
    check(back.size() == rows && back.subset == opts.subset,
          "gen-data: reload check failed for " + path.string());
  }

  const json cfg{{"balanced", opts.balanced},
                 {"n_test", opts.n_test},
                 {"n_train", opts.n_train},
                 {"out", opts.out_dir.string()},
                 {"seed", opts.seed},
                 {"subset", data::subset_name(opts.subset)}};
  res.manifest = opts.out_dir / "manifest_gen_data.json";
  write_manifest(res.manifest, "gen-data", cfg, opts.seed, {},
                 {res.train_csv, fs::path(res.train_csv.string() + ".json"),
                  res.test_csv, fs::path(res.test_csv.string() + ".json")});
  return res;
}

TrainResult cmd_train(const TrainOptions& opts) {
  check(opts.epochs >= 1, "train: epochs must be >= 1");
  check(opts.batch >= 1, "train: batch must be >= 1");
  check(opts.lr > 0.0, "train: lr must be positive");

  const auto [train_ds, test_ds] = load_dataset_pair(opts.out_dir, "train");
  if (opts.subset && train_ds.subset != *opts.subset)
    throw std::runtime_error(std::string("train: dataset is subset '") +
                             data::subset_name(train_ds.subset) + "' but '" +
                             data::subset_name(*opts.subset) + "' was requested");

  bvae::BvaeConfig mc;
  mc.input_dim = train_ds.feature_width();
  mc.r_cat = opts.r_cat;
  mc.beta = opts.beta;
  rng::Stream init(opts.seed, rng::kInitStream);
  bvae::BvaeModel model = bvae::build_model(mc, init);

  train::TrainConfig tc;
  tc.epochs = opts.epochs;
  tc.initial_lr = opts.lr;
  tc.batch_size = opts.batch;
  tc.r_cat = opts.r_cat;
  tc.beta = opts.beta;
  tc.clip_norm = opts.clip_norm;
  tc.seed = opts.seed;
  const train::TrainLog log = train::fit(model, train_ds, test_ds, tc);

  TrainResult res;
  res.checkpoint = opts.out_dir / "checkpoint.json";
  res.train_log = opts.out_dir / "trainlog.csv";
  bvae::save_checkpoint(model, res.checkpoint.string(), opts.seed);
  train::export_train_log_csv(log, res.train_log.string());
  res.final_val_acc = log.records.back().val_acc;

  bvae::load_checkpoint(res.checkpoint.string());
  check(log.records.size() == opts.epochs, "train: incomplete train log");

  const json cfg{{"batch", opts.batch},
                 {"beta", opts.beta},
                 {"clip_norm", opts.clip_norm},
                 {"epochs", opts.epochs},
                 {"lr", opts.lr},
                 {"out", opts.out_dir.string()},
                 {"rcat", opts.r_cat},
                 {"seed", opts.seed},
                 {"subset", data::subset_name(train_ds.subset)}};
  res.manifest = opts.out_dir / "manifest_train.json";
  write_manifest(res.manifest, "train", cfg, opts.seed,
                 {opts.out_dir / "train.csv", opts.out_dir / "test.csv"},
                 {res.checkpoint, res.train_log});
  return res;
}

EvaluateResult cmd_evaluate(const EvaluateOptions& opts) {
  const fs::path ckpt_path = opts.out_dir / "checkpoint.json";
  check(fs::exists(ckpt_path), "evaluate: missing checkpoint " + ckpt_path.string());
  const bvae::Checkpoint ckpt = bvae::load_checkpoint(ckpt_path.string());
  const auto [train_ds, test_ds] = load_dataset_pair(opts.out_dir, "evaluate");
  if (ckpt.model.config.input_dim != test_ds.feature_width())
    throw std::runtime_error(
        "evaluate: checkpoint expects " + std::to_string(ckpt.model.config.input_dim) +
        " features but the dataset has " + std::to_string(test_ds.feature_width()));

  EvaluateResult res;
  const train::EvalResult ev = train::evaluate(ckpt.model, test_ds);
  res.model_accuracy = ev.accuracy;
  res.confusion = ev.confusion;
  const analysis::LatentRuleFit rule = analysis::fit_latent_rule(
      bvae::latent_mean(ckpt.model, train::features_matrix(train_ds)),
      analysis::dataset_labels(train_ds));
  res.latent_rule = rule.rule;
  res.latent_accuracy = analysis::latent_rule_accuracy(
      rule.rule, bvae::latent_mean(ckpt.model, train::features_matrix(test_ds)),
      analysis::dataset_labels(test_ds));

  json metrics;
  metrics["confusion"] = json::array(
      {json::array({res.confusion[0][0], res.confusion[0][1]}),
       json::array({res.confusion[1][0], res.confusion[1][1]})});
  metrics["latent_accuracy"] = res.latent_accuracy;
  metrics["latent_rule"] = json{{"axis", res.latent_rule.axis},
                                {"positive_separable", res.latent_rule.positive_separable}};
  metrics["model_accuracy"] = res.model_accuracy;
  res.metrics_text = metrics.dump(2) + "\n";
  res.metrics_json = opts.out_dir / "metrics.json";
  io::write_text_file(res.metrics_json, res.metrics_text);

  const json back = json::parse(io::read_text_file(res.metrics_json));
  check(back.contains("model_accuracy") && back.contains("latent_rule") &&
            back.contains("latent_accuracy") && back.contains("confusion"),
        "evaluate: metrics reload check failed");

  const json cfg{{"out", opts.out_dir.string()}};
  res.manifest = opts.out_dir / "manifest_evaluate.json";
  write_manifest(res.manifest, "evaluate", cfg, ckpt.seed,
                 {ckpt_path, opts.out_dir / "train.csv", opts.out_dir / "test.csv"},
                 {res.metrics_json});
  return res;
}

SweepCmdResult cmd_sweep(const SweepOptions& opts) {
  check(!opts.ratios.empty(), "sweep: empty ratio list");
  check(opts.epochs >= 1, "sweep: epochs must be >= 1");
  const auto [train_ds, test_ds] = load_dataset_pair(opts.out_dir, "sweep");

  train::TrainConfig base;
  base.epochs = opts.epochs;
  base.initial_lr = opts.lr;
  base.batch_size = opts.batch;
  base.r_cat = opts.r_cat;
  base.clip_norm = opts.clip_norm;

  SweepCmdResult res;
  res.sweep = analysis::beta_sweep(train_ds, test_ds, opts.ratios, {opts.seed},
                                   base, opts.jobs);
  res.csv = opts.out_dir / "sweep.csv";
  analysis::export_sweep_csv(res.sweep, res.csv);

  const std::string back = io::read_text_file(res.csv);
  const std::size_t lines =
      static_cast<std::size_t>(std::count(back.begin(), back.end(), '\n'));
  check(lines == res.sweep.rows.size() + 1, "sweep: csv reload check failed");

  const json cfg{{"batch", opts.batch},     {"clip_norm", opts.clip_norm},
                 {"epochs", opts.epochs},   {"jobs", opts.jobs},
                 {"lr", opts.lr},           {"out", opts.out_dir.string()},
                 {"ratios", opts.ratios},   {"rcat", opts.r_cat},
                 {"seed", opts.seed}};
  res.manifest = opts.out_dir / "manifest_sweep.json";
  write_manifest(res.manifest, "sweep", cfg, opts.seed,
                 {opts.out_dir / "train.csv", opts.out_dir / "test.csv"}, {res.csv});
  return res;
}

namespace {

struct ReferenceAccuracy {
  double model;
  double latent;
};

// Published reference accuracies for the three measurement sets.
constexpr std::array<ReferenceAccuracy, 3> kReference{
    {{0.88, 0.84}, {0.83, 0.80}, {0.61, 0.61}}};

constexpr std::array<data::MeasurementSubset, 3> kSubsetOrder{
    data::MeasurementSubset::Tomographic15, data::MeasurementSubset::Correlated9,
    data::MeasurementSubset::Local6};

const std::array<const char*, 9> kSubsetArtifacts{
    "train.csv",      "train.csv.json", "test.csv",
    "test.csv.json",  "checkpoint.json", "trainlog.csv",
    "metrics.json",   "latent_train.csv", "latent_test.csv"};

}  // namespace

ReproduceResult cmd_reproduce(const ReproduceOptions& opts) {
  check(opts.epochs >= 1, "reproduce: epochs must be >= 1");
  fs::create_directories(opts.out_dir);

  ReproduceResult res;
  res.rows.resize(3);
  par::run_indexed(3, opts.jobs, [&](std::size_t i) {
    const data::MeasurementSubset subset = kSubsetOrder[i];
    const std::string name = data::subset_name(subset);
    const fs::path sub_dir = opts.out_dir / name;

    try {
      GenDataOptions gd;
      gd.seed = opts.seed;
      gd.subset = subset;
      gd.out_dir = sub_dir;
      gd.n_train = opts.n_train;
      gd.n_test = opts.n_test;
      gd.balanced = true;
      cmd_gen_data(gd);
    } catch (const std::exception& e) {
      throw std::runtime_error("reproduce: stage generate " + name + ": " + e.what());
    }

    try {
      TrainOptions to;
      to.seed = opts.seed;
      to.out_dir = sub_dir;
      to.subset = subset;
      to.epochs = opts.epochs;
      to.batch = opts.batch;
      to.clip_norm = opts.clip_norm;
      cmd_train(to);
    } catch (const std::exception& e) {
      throw std::runtime_error("reproduce: stage train " + name + ": " + e.what());
    }

    EvaluateResult ev;
    try {
      EvaluateOptions eo;
      eo.out_dir = sub_dir;
      ev = cmd_evaluate(eo);
    } catch (const std::exception& e) {
      throw std::runtime_error("reproduce: stage evaluate " + name + ": " + e.what());
    }

    try {
      const bvae::Checkpoint ckpt =
          bvae::load_checkpoint((sub_dir / "checkpoint.json").string());
      analysis::export_latent_csv(ckpt.model, data::load_csv(sub_dir / "train.csv"),
                                  sub_dir / "latent_train.csv");
      analysis::export_latent_csv(ckpt.model, data::load_csv(sub_dir / "test.csv"),
                                  sub_dir / "latent_test.csv");
    } catch (const std::exception& e) {
      throw std::runtime_error("reproduce: stage latent-export " + name + ": " +
                               e.what());
    }

    res.rows[i] = {name, ev.model_accuracy, ev.latent_accuracy, kReference[i].model,
                   kReference[i].latent};
  });

  std::string table =
      "subset      model_acc   latent_acc   ref_model   ref_latent\n";
  std::string csv = "subset,model_acc,latent_acc,ref_model,ref_latent\n";
  for (const ReproduceRow& row : res.rows) {
    char line[128];
    std::snprintf(line, sizeof line, "%-10s  %9.4f   %10.4f   %9.2f   %10.2f\n",
                  row.subset.c_str(), row.model_acc, row.latent_acc, row.ref_model,
                  row.ref_latent);
    table += line;
    csv += row.subset + ',' + io::format_double(row.model_acc) + ',' +
           io::format_double(row.latent_acc) + ',' + io::format_double(row.ref_model) +
           ',' + io::format_double(row.ref_latent) + '\n';
  }
  res.summary_table = table;
  res.summary_csv = opts.out_dir / "summary.csv";
  io::write_text_file(res.summary_csv, csv);

  std::vector<fs::path> outputs;
  for (const auto subset : kSubsetOrder)
    for (const char* file : kSubsetArtifacts)
      outputs.push_back(opts.out_dir / data::subset_name(subset) / file);
  outputs.push_back(res.summary_csv);
  for (const auto& p : outputs)
    check(fs::exists(p), "reproduce: missing output " + p.string());

  const json cfg{{"batch", opts.batch},   {"clip_norm", opts.clip_norm},
                 {"epochs", opts.epochs}, {"jobs", opts.jobs},
                 {"n_test", opts.n_test}, {"n_train", opts.n_train},
                 {"out", opts.out_dir.string()}, {"seed", opts.seed}};
  res.manifest = opts.out_dir / "manifest_reproduce.json";
  write_manifest(res.manifest, "reproduce", cfg, opts.seed, {}, outputs);
  return res;
}

namespace {

// Config file support: flags > config file > defaults.
const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys{
      "balanced", "batch", "beta",    "clip_norm", "epochs", "jobs",   "lr",
      "n_test",   "n_train", "out",   "ratios",    "rcat",   "seed",   "subset"};
  return keys;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json cfg = json::parse(io::read_text_file(path));
  if (!cfg.is_object()) throw std::runtime_error("config: expected a JSON object");
  for (const auto& item : cfg.items())
    if (!known_config_keys().count(item.key()))
      throw std::runtime_error("config: unknown key '" + item.key() + "'");
  return cfg;
}

template <typename T>
void overlay(const json& cfg, const char* key, const CLI::App* sub, const char* flag,
             T& slot) {
  if (cfg.contains(key) && sub->count(flag) == 0) slot = cfg.at(key).get<T>();
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"two-qubit entanglement classification experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::kVersion);

  std::string gd_subset = "full", gd_out = ".", gd_config;
  GenDataOptions gd_opts;
  CLI::App* gd = app.add_subcommand("gen-data", "generate labeled train/test datasets");
  gd->add_option("--seed", gd_opts.seed, "run seed");
  gd->add_option("--subset", gd_subset, "full, correlated or local");
  gd->add_option("--out", gd_out, "run directory");
  gd->add_option("--balanced", gd_opts.balanced, "balance the class counts");
  gd->add_option("--config", gd_config, "JSON config file");
  gd->callback([&] {
    const json cfg = load_config(gd_config);
    overlay(cfg, "seed", gd, "--seed", gd_opts.seed);
    overlay(cfg, "subset", gd, "--subset", gd_subset);
    overlay(cfg, "out", gd, "--out", gd_out);
    overlay(cfg, "balanced", gd, "--balanced", gd_opts.balanced);
    if (cfg.contains("n_train")) gd_opts.n_train = cfg.at("n_train").get<std::size_t>();
    if (cfg.contains("n_test")) gd_opts.n_test = cfg.at("n_test").get<std::size_t>();
    gd_opts.subset = parse_subset(gd_subset);
    gd_opts.out_dir = gd_out;
    const GenDataResult res = cmd_gen_data(gd_opts);
    std::printf("wrote %s (%zu rows) and %s (%zu rows)\n", res.train_csv.c_str(),
                gd_opts.n_train, res.test_csv.c_str(), gd_opts.n_test);
  });

  std::string tr_subset, tr_out = ".", tr_config;
  TrainOptions tr_opts;
  CLI::App* tr = app.add_subcommand("train", "train a classifier on a run directory");
  tr->add_option("--seed", tr_opts.seed, "run seed");
  tr->add_option("--subset", tr_subset, "expected dataset subset");
  tr->add_option("--out", tr_out, "run directory");
  tr->add_option("--epochs", tr_opts.epochs, "training epochs");
  tr->add_option("--lr", tr_opts.lr, "initial learning rate");
  tr->add_option("--rcat", tr_opts.r_cat, "categorical loss weight");
  tr->add_option("--beta", tr_opts.beta, "KL loss weight");
  tr->add_option("--batch", tr_opts.batch, "minibatch size");
  tr->add_option("--config", tr_config, "JSON config file");
  tr->callback([&] {
    const json cfg = load_config(tr_config);
    overlay(cfg, "seed", tr, "--seed", tr_opts.seed);
    overlay(cfg, "subset", tr, "--subset", tr_subset);
    overlay(cfg, "out", tr, "--out", tr_out);
    overlay(cfg, "epochs", tr, "--epochs", tr_opts.epochs);
    overlay(cfg, "lr", tr, "--lr", tr_opts.lr);
    overlay(cfg, "rcat", tr, "--rcat", tr_opts.r_cat);
    overlay(cfg, "beta", tr, "--beta", tr_opts.beta);
    overlay(cfg, "batch", tr, "--batch", tr_opts.batch);
    if (cfg.contains("clip_norm")) tr_opts.clip_norm = cfg.at("clip_norm").get<double>();
    if (!tr_subset.empty()) tr_opts.subset = parse_subset(tr_subset);
    tr_opts.out_dir = tr_out;
    const TrainResult res = cmd_train(tr_opts);
    std::printf("final validation accuracy %.4f\nwrote %s and %s\n",
                res.final_val_acc, res.checkpoint.c_str(), res.train_log.c_str());
  });

  std::string ev_out = ".", ev_config;
  CLI::App* ev = app.add_subcommand("evaluate", "score a checkpoint on its run directory");
  ev->add_option("--out", ev_out, "run directory");
  ev->add_option("--config", ev_config, "JSON config file");
  ev->callback([&] {
    const json cfg = load_config(ev_config);
    overlay(cfg, "out", ev, "--out", ev_out);
    EvaluateOptions opts;
    opts.out_dir = ev_out;
    const EvaluateResult res = cmd_evaluate(opts);
    std::fputs(res.metrics_text.c_str(), stdout);
  });

  std::string sw_out = ".", sw_config;
  SweepOptions sw_opts;
  CLI::App* sw = app.add_subcommand("sweep", "beta/r_cat ratio sweep on a run directory");
  sw->add_option("--seed", sw_opts.seed, "run seed");
  sw->add_option("--out", sw_out, "run directory");
  sw->add_option("--ratios", sw_opts.ratios, "beta/r_cat ratios")->delimiter(',');
  sw->add_option("--epochs", sw_opts.epochs, "training epochs per point");
  sw->add_option("--lr", sw_opts.lr, "initial learning rate");
  sw->add_option("--rcat", sw_opts.r_cat, "categorical loss weight");
  sw->add_option("--batch", sw_opts.batch, "minibatch size");
  sw->add_option("--jobs", sw_opts.jobs, "parallel fits");
  sw->add_option("--config", sw_config, "JSON config file");
  sw->callback([&] {
    const json cfg = load_config(sw_config);
    overlay(cfg, "seed", sw, "--seed", sw_opts.seed);
    overlay(cfg, "out", sw, "--out", sw_out);
    overlay(cfg, "ratios", sw, "--ratios", sw_opts.ratios);
    overlay(cfg, "epochs", sw, "--epochs", sw_opts.epochs);
    overlay(cfg, "lr", sw, "--lr", sw_opts.lr);
    overlay(cfg, "rcat", sw, "--rcat", sw_opts.r_cat);
    overlay(cfg, "batch", sw, "--batch", sw_opts.batch);
    overlay(cfg, "jobs", sw, "--jobs", sw_opts.jobs);
    if (cfg.contains("clip_norm")) sw_opts.clip_norm = cfg.at("clip_norm").get<double>();
    sw_opts.out_dir = sw_out;
    const SweepCmdResult res = cmd_sweep(sw_opts);
    std::printf("ratio        seed  model_acc  latent_acc\n");
    for (const analysis::SweepRow& row : res.sweep.rows)
      std::printf("%-10g %6llu %10.4f %11.4f\n", row.ratio,
                  static_cast<unsigned long long>(row.seed), row.model_acc,
                  row.latent_acc);
    std::printf("wrote %s\n", res.csv.c_str());
  });

  std::string rp_out = ".", rp_config;
  ReproduceOptions rp_opts;
  CLI::App* rp = app.add_subcommand(
      "reproduce", "full pipeline: all three subsets from one seed");
  rp->add_option("--seed", rp_opts.seed, "run seed");
  rp->add_option("--out", rp_out, "run directory");
  rp->add_option("--epochs", rp_opts.epochs, "training epochs");
  rp->add_option("--batch", rp_opts.batch, "minibatch size");
  rp->add_option("--jobs", rp_opts.jobs, "parallel fits");
  rp->add_option("--config", rp_config, "JSON config file");
  rp->callback([&] {
    const json cfg = load_config(rp_config);
    overlay(cfg, "seed", rp, "--seed", rp_opts.seed);
    overlay(cfg, "out", rp, "--out", rp_out);
    overlay(cfg, "epochs", rp, "--epochs", rp_opts.epochs);
    overlay(cfg, "batch", rp, "--batch", rp_opts.batch);
    overlay(cfg, "jobs", rp, "--jobs", rp_opts.jobs);
    if (cfg.contains("clip_norm")) rp_opts.clip_norm = cfg.at("clip_norm").get<double>();
    if (cfg.contains("n_train")) rp_opts.n_train = cfg.at("n_train").get<std::size_t>();
    if (cfg.contains("n_test")) rp_opts.n_test = cfg.at("n_test").get<std::size_t>();
    rp_opts.out_dir = rp_out;
    const ReproduceResult res = cmd_reproduce(rp_opts);
    std::fputs(res.summary_table.c_str(), stdout);
    std::printf("wrote %s\n", res.summary_csv.c_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace entvae::cli
