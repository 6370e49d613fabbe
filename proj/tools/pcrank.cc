// Copyright 2026 The pcrank Authors.
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

// pcrank command-line front end.
//
// Exit codes:
//   0  success
//   1  usage error (bad flags or arguments)
//   2  configuration error
//   3  judge failure (campaign aborted)
//   4  I/O error
//   5  insufficient data (empty log, undefined correlation, pool too small)

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcrank/csv.h"
#include "pcrank/errors.h"
#include "pcrank/evalkit.h"
#include "pcrank/judge.h"
#include "pcrank/match_log.h"
#include "pcrank/rating.h"
#include "pcrank/simlab.h"
#include "pcrank/strategy.h"

#ifndef PCRANK_VERSION
#define PCRANK_VERSION "0.0.0"
#endif

namespace pcrank {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kJudge = 3,
  kIo = 4,
  kInsufficientData = 5,
};

std::string Sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void Close(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create directory '" + dir + "'");
  }
}

// Everything needed to rerun a command. `config` is hashed in the compact
// canonical form nlohmann produces for an ordered object.
class Manifest {
 public:
  Manifest(std::string command, ordered_json config, std::uint64_t seed)
      : command_(std::move(command)),
        config_(std::move(config)),
        seed_(seed),
        started_at_(UtcNow()) {}

  void AddOutput(const std::string& path) { outputs_.push_back(path); }

  void Write(const std::string& path) const {
    ordered_json j;
    j["command"] = command_;
    j["tool_version"] = PCRANK_VERSION;
    j["seed"] = seed_;
    j["config_hash"] = "sha256:" + Sha256Hex(config_.dump());
    j["config"] = config_;
    j["started_at"] = started_at_;
    j["finished_at"] = UtcNow();
    j["outputs"] = outputs_;
    std::ofstream out = OpenOut(path);
    out << j.dump(2) << '\n';
    Close(out, path);
  }

 private:
  std::string command_;
  ordered_json config_;
  std::uint64_t seed_;
  std::string started_at_;
  std::vector<std::string> outputs_;
};

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string dist = "linear";
  int n = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

int RunGen(const GenArgs& a) {
  const Distribution dist = ParseDistribution(a.dist);
  const LatentDataset data = GenDataset(dist, a.n, a.seed);
  std::ofstream out = OpenOut(a.out);
  WriteDatasetCsv(out, data.items);
  Close(out, a.out);

  ordered_json config;
  config["distribution"] = a.dist;
  config["distribution_params"] = DescribeDistribution(dist);
  config["n"] = a.n;
  Manifest manifest("gen", config, a.seed);
  manifest.AddOutput(a.out);
  manifest.Write(a.out + ".manifest.json");

  double sum = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Item& item : data.items) {
    sum += *item.latent;
    lo = std::min(lo, *item.latent);
    hi = std::max(hi, *item.latent);
  }
  std::cout << "n=" << a.n << " distribution=" << a.dist
            << " mean=" << FormatDouble(sum / a.n)
            << " min=" << FormatDouble(lo) << " max=" << FormatDouble(hi)
            << '\n';
  return kOk;
}

// ----------------------------------------------------------- campaign

struct CampaignArgs {
  std::string dataset;
  std::string config;
  std::string judge = "sim:default";
  std::optional<std::uint64_t> seed;
  std::string out;
  int max_in_flight = 1;
  int timeout_ms = 30000;
};

// Simulated judge profile, e.g.
//   {"p_max": 0.99, "p_target": 0.8, "delta_ref": 90,
//    "t_bias": 0, "delta_bias": 200}
// "tau" may replace p_target/delta_ref; {"noiseless": true} disables noise.
std::unique_ptr<Judge> MakeSimulatedJudge(const std::string& profile,
                                          std::span<const Item> items,
                                          std::uint64_t seed,
                                          ordered_json& describe) {
  nlohmann::json p = nlohmann::json::object();
  if (profile != "default") {
    std::ifstream in(profile, std::ios::binary);
    if (!in) throw IoError("cannot open judge profile '" + profile + "'");
    try {
      p = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("judge profile: " + std::string(e.what()));
    }
    if (!p.is_object()) throw ConfigError("judge profile must be an object");
  }
  const std::vector<std::string> allowed = {
      "p_max", "p_target", "delta_ref", "tau", "noiseless",
      "t_bias", "delta_bias", "id"};
  double p_max = 0.99, p_target = 0.8, delta_ref = 90, delta_bias = 200;
  std::optional<double> tau;
  bool noiseless = false;
  int t_bias = 0;
  std::string id = "sim";
  try {
    for (const auto& [key, value] : p.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError("judge profile: unknown key '" + key + "'");
      }
    }
    p_max = p.value("p_max", p_max);
    p_target = p.value("p_target", p_target);
    delta_ref = p.value("delta_ref", delta_ref);
    if (p.contains("tau")) tau = p["tau"].get<double>();
    noiseless = p.value("noiseless", false);
    t_bias = p.value("t_bias", t_bias);
    delta_bias = p.value("delta_bias", delta_bias);
    id = p.value("id", id);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("judge profile: " + std::string(e.what()));
  }
  NoiseModel model = NoiseModel::Noiseless();
  try {
    if (!noiseless) {
      model = tau ? NoiseModel::WithTau(p_max, *tau)
                  : NoiseModel::Calibrated(p_max, p_target, delta_ref);
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError("judge profile: " + std::string(e.what()));
  }
  if (t_bias < 0 || t_bias > static_cast<int>(items.size())) {
    throw ConfigError("judge profile: t_bias out of range");
  }
  AnnotatorBias bias =
      AssignBias(items, t_bias, delta_bias, DeriveRng(seed, {2})());

  describe["kind"] = "sim";
  describe["profile"] = profile;
  describe["p_max"] = model.p_max();
  describe["tau"] = model.tau();
  describe["noiseless"] = noiseless;
  describe["t_bias"] = t_bias;
  describe["delta_bias"] = delta_bias;
  return std::make_unique<SimulatedJudge>(model, std::move(bias),
                                          DeriveRng(seed, {4}), id);
}

std::unique_ptr<Judge> MakeJudge(const CampaignArgs& a,
                                 std::span<const Item> items,
                                 std::uint64_t seed, ordered_json& describe,
                                 std::vector<MatchRecord>& replay_log) {
  const auto colon = a.judge.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("judge spec must be sim:<profile>, http:<url> or "
                      "replay:<path>");
  }
  const std::string kind = a.judge.substr(0, colon);
  const std::string arg = a.judge.substr(colon + 1);
  if (arg.empty()) throw ConfigError("judge spec '" + a.judge + "' is empty");
  if (kind == "sim") return MakeSimulatedJudge(arg, items, seed, describe);
  if (kind == "http") {
    JudgeEndpoint endpoint;
    endpoint.base_url = arg;
    endpoint.timeout = std::chrono::milliseconds(a.timeout_ms);
    if (const char* token = std::getenv("PCRANK_JUDGE_TOKEN")) {
      endpoint.auth_token = token;
    }
    describe["kind"] = "http";
    describe["url"] = arg;
    describe["max_in_flight"] = a.max_in_flight;
    try {
      return std::make_unique<ExternalJudge>(endpoint, a.max_in_flight);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("judge spec: ") + e.what());
    }
  }
  if (kind == "replay") {
    replay_log = ReadMatchLogFile(arg);
    describe["kind"] = "replay";
    describe["path"] = arg;
    describe["records"] = replay_log.size();
    return std::make_unique<ReplayJudge>(replay_log);
  }
  throw ConfigError("unknown judge kind '" + kind + "'");
}

void WriteCampaignOutputs(const CampaignResult& r, const std::string& dir,
                          Manifest& manifest, bool aborted) {
  const std::string log_path = (fs::path(dir) / "matches.jsonl").string();
  const std::string ledger_path = (fs::path(dir) / "ledger.json").string();
  const std::string elo_path = (fs::path(dir) / "elo.csv").string();

  WriteMatchLogFile(log_path, r.log);

  ordered_json ledger;
  ledger["pairwise_calls"] = r.ledger.pairwise_calls;
  ledger["listwise_calls"] = r.ledger.listwise_calls;
  ledger["cost_equivalent_calls"] = r.ledger.cost_equivalent_calls;
  ledger["judge_calls"] = r.calls.size();
  ledger["rounds_played"] = r.rounds_played;
  ledger["aborted"] = aborted;
  ordered_json pruned = ordered_json::object();
  for (const auto& [id, round] : r.pruned_after) pruned[id] = round;
  ledger["pruned_after"] = pruned;
  std::ofstream lout = OpenOut(ledger_path);
  lout << ledger.dump(2) << '\n';
  Close(lout, ledger_path);

  std::ofstream eout = OpenOut(elo_path);
  WriteScoresCsv(eout, r.elo, "elo");
  Close(eout, elo_path);

  manifest.AddOutput(log_path);
  manifest.AddOutput(ledger_path);
  manifest.AddOutput(elo_path);
  manifest.Write((fs::path(dir) / "manifest.json").string());
}

int RunCampaignCmd(const CampaignArgs& a) {
  const std::vector<Item> items = ReadDatasetCsvFile(a.dataset);
  CampaignConfig config = ReadCampaignConfigFile(a.config);
  if (a.seed) config.rng_seed = *a.seed;
  const std::uint64_t seed = config.rng_seed;

  ordered_json judge_desc;
  std::vector<MatchRecord> replay_log;
  std::unique_ptr<Judge> judge =
      MakeJudge(a, items, seed, judge_desc, replay_log);
  EnsureDir(a.out);

  ordered_json canonical;
  canonical["dataset"] = a.dataset;
  canonical["campaign"] = ordered_json::parse(ToJson(config));
  canonical["judge"] = judge_desc;
  Manifest manifest("campaign", canonical, seed);

  try {
    const CampaignResult r = RunCampaign(items, config, *judge);
    WriteCampaignOutputs(r, a.out, manifest, false);
    std::cout << "strategy=" << ToString(config.strategy)
              << " rounds_played=" << r.rounds_played
              << " matches=" << r.log.size()
              << " cost_equivalent_calls="
              << FormatDouble(r.ledger.cost_equivalent_calls) << '\n';
  } catch (const CampaignAborted& e) {
    WriteCampaignOutputs(e.partial(), a.out, manifest, true);
    throw;
  }
  return kOk;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string log;
  std::string out;
  std::optional<std::string> dataset;
  double lambda = 1e-6;
  int max_iterations = 10000;
  double tolerance = 1e-8;
};

int RunFit(const FitArgs& a) {
  const std::vector<MatchRecord> log = ReadMatchLogFile(a.log);
  WinMatrix wins = ToWinMatrix(log);
  if (a.dataset) {
    for (const Item& item : ReadDatasetCsvFile(*a.dataset)) {
      wins.AddItem(item.id);
    }
  }
  BtFitConfig config;
  config.lambda = a.lambda;
  config.max_iterations = a.max_iterations;
  config.tolerance = a.tolerance;
  const BtScores fit = BtFit(wins, config);

  std::ofstream out = OpenOut(a.out);
  out << "id,theta,pi\n";
  for (const auto& [id, theta] : fit.theta) {
    out << CsvEscape(id) << ',' << FormatDouble(theta) << ','
        << FormatDouble(fit.pi.at(id)) << '\n';
  }
  Close(out, a.out);

  ordered_json canonical;
  canonical["log"] = a.log;
  canonical["dataset"] = a.dataset ? ordered_json(*a.dataset) : nullptr;
  canonical["lambda"] = a.lambda;
  canonical["max_iterations"] = a.max_iterations;
  canonical["tolerance"] = a.tolerance;
  Manifest manifest("fit", canonical, 0);
  manifest.AddOutput(a.out);
  manifest.Write(a.out + ".manifest.json");

  std::cout << "items=" << fit.theta.size()
            << " excluded=" << fit.excluded.size()
            << " iterations=" << fit.iterations_used
            << " converged=" << (fit.converged ? "true" : "false")
            << " log_likelihood=" << FormatDouble(fit.final_log_likelihood)
            << '\n';
  return kOk;
}

// --------------------------------------------------------------- eval

struct EvalArgs {
  std::string scores;
  std::string reference;
  std::string mode = "rank";
  std::string rating = "bt";
  double elo_start = kDefaultInitialRating;
  std::string scores_column;
  std::string reference_column;
  std::optional<std::string> out;
};

// Explicit column, else the first of `preferred` present, else the second
// column.
ScoreMap ReadColumn(const std::string& path, const std::string& explicit_col,
                    std::initializer_list<std::string_view> preferred) {
  if (!explicit_col.empty()) return ReadScoresCsvFile(path, explicit_col);
  const CsvTable header = ReadCsvFile(path);
  for (std::string_view name : preferred) {
    if (header.Column(name)) return ReadScoresCsvFile(path, name);
  }
  return ReadScoresCsvFile(path);
}

int RunEval(const EvalArgs& a) {
  const ScoreMap scores =
      ReadColumn(a.scores, a.scores_column, {"theta", "elo", "score"});
  ordered_json report;
  report["mode"] = a.mode;
  if (a.mode == "rank") {
    const ScoreMap ref =
        ReadColumn(a.reference, a.reference_column, {"latent"});
    report["spearman_rho"] = SpearmanRho(scores, ref);
  } else if (a.mode == "corr") {
    const ScoreMap ref =
        ReadColumn(a.reference, a.reference_column, {"label", "latent"});
    report["pearson_r"] = PearsonR(scores, ref);
  } else if (a.mode == "detect") {
    const ScoreMap gold_raw =
        ReadColumn(a.reference, a.reference_column, {"label"});
    std::map<ItemId, Label> gold;
    for (const auto& [id, v] : gold_raw) {
      if (v != 0 && v != 1) {
        throw InvalidArgument("gold label for '" + id + "' is not 0 or 1");
      }
      gold[id] = v == 1 ? Label::kBiased : Label::kUnbiased;
    }
    const RatingKind kind = ParseRatingKind(a.rating);
    const MetricReport m =
        ClassificationMetrics(DetectBinary(scores, kind, a.elo_start), gold);
    report["rating"] = a.rating;
    report["recall"] = m.recall;
    report["accuracy"] = m.accuracy;
    report["precision"] = m.precision;
    report["macro_f1"] = m.macro_f1;
    report["true_positive"] = m.true_positive;
    report["false_positive"] = m.false_positive;
    report["false_negative"] = m.false_negative;
    report["true_negative"] = m.true_negative;
  } else {
    throw InvalidArgument("unknown mode '" + a.mode + "'");
  }

  std::ostringstream csv;
  csv << "metric,value\n";
  for (const auto& [key, value] : report.items()) {
    if (key == "mode" || key == "rating") continue;
    csv << key << ','
        << (value.is_number_float() ? FormatDouble(value.get<double>())
                                    : value.dump())
        << '\n';
  }
  std::cout << csv.str();
  if (a.out) {
    std::ofstream out = OpenOut(*a.out);
    out << csv.str();
    Close(out, *a.out);
  }
  return kOk;
}

// -------------------------------------------------------------- sweep

struct SweepArgs {
  std::string grid;
  std::string out;
  int jobs = 1;
  bool quiet = false;
};

int RunSweepCmd(const SweepArgs& a) {
  const SweepGrid grid = ReadSweepGridFile(a.grid);
  EnsureDir(a.out);

  ordered_json canonical;
  try {
    std::ifstream in(a.grid, std::ios::binary);
    canonical = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("grid: " + std::string(e.what()));
  }
  const std::uint64_t first_seed = grid.seeds.front();
  Manifest manifest("sweep", canonical, first_seed);

  SweepOptions options;
  options.jobs = a.jobs;
  if (!a.quiet) {
    options.progress = [](std::size_t done, std::size_t total) {
      std::cerr << "\rcells " << done << '/' << total << std::flush;
      if (done == total) std::cerr << '\n';
    };
  }
  const std::vector<SweepResult> rows = RunSweep(grid, options);
  const std::vector<ConfigSummary> ranking =
      SummarizeSweep(rows, grid.score_alpha);

  const std::string sweep_path = (fs::path(a.out) / "sweep.csv").string();
  const std::string rank_path = (fs::path(a.out) / "ranking.csv").string();
  std::ofstream sout = OpenOut(sweep_path);
  WriteSweepCsv(sout, rows);
  Close(sout, sweep_path);
  std::ofstream rout = OpenOut(rank_path);
  WriteRankingCsv(rout, ranking);
  Close(rout, rank_path);
  manifest.AddOutput(sweep_path);
  manifest.AddOutput(rank_path);
  manifest.Write((fs::path(a.out) / "manifest.json").string());

  const auto failed = std::count_if(rows.begin(), rows.end(),
                                    [](const SweepResult& r) {
                                      return r.failed;
                                    });
  std::cout << "rows=" << rows.size() << " failed=" << failed << '\n';
  if (!ranking.empty()) {
    const ConfigSummary& best = ranking.front();
    std::cout << "best: " << ToString(best.strategy) << ' ' << best.params
              << ' ' << ToString(best.matchmaking) << ' '
              << ToString(best.rating)
              << " score_alpha=" << FormatDouble(best.score_alpha)
              << " mean_rho=" << FormatDouble(best.mean_rho)
              << " mean_cost=" << FormatDouble(best.mean_cost) << '\n';
  }
  return kOk;
}

// Runs `fn`, translating library errors into exit codes.
template <typename Fn>
int Guard(Fn fn) {
  try {
    return fn();
  } catch (const CampaignAborted& e) {
    std::cerr << "error: campaign aborted: " << e.what() << '\n';
    return kJudge;
  } catch (const JudgeFailure& e) {
    std::cerr << "error: judge: " << e.what() << '\n';
    return kJudge;
  } catch (const ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return kIo;
  } catch (const InsufficientData& e) {
    std::cerr << "error: insufficient data: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const InsufficientPool& e) {
    std::cerr << "error: insufficient pool: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const UndefinedCorrelation& e) {
    std::cerr << "error: undefined correlation: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Rank items from pairwise and listwise comparisons."};
  app.set_version_flag("--version", PCRANK_VERSION);
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a latent dataset");
  gen_cmd->add_option("--dist", gen.dist, "linear | bimodal | normal")
      ->check(CLI::IsMember({"linear", "bimodal", "normal"}));
  gen_cmd->add_option("--n", gen.n, "Number of items")
      ->check(CLI::Range(2, std::numeric_limits<int>::max()));
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();

  CampaignArgs camp;
  CLI::App* camp_cmd =
      app.add_subcommand("campaign", "Run a comparison campaign");
  camp_cmd->add_option("--dataset", camp.dataset, "Dataset CSV")->required();
  camp_cmd->add_option("--config", camp.config, "Campaign config JSON")
      ->required();
  camp_cmd->add_option("--judge", camp.judge,
                       "sim:default | sim:<profile.json> | http:<url> | "
                       "replay:<matches.jsonl>");
  camp_cmd->add_option("--seed", camp.seed,
                       "RNG seed (overrides the config's rng_seed)");
  camp_cmd->add_option("--out", camp.out, "Output directory")->required();
  camp_cmd->add_option("--max-in-flight", camp.max_in_flight,
                       "Concurrent requests for an http judge")
      ->check(CLI::PositiveNumber);
  camp_cmd->add_option("--judge-timeout-ms", camp.timeout_ms,
                       "Per-request timeout for an http judge")
      ->check(CLI::PositiveNumber);

  FitArgs fit;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Fit Bradley-Terry scores to a match log");
  fit_cmd->add_option("--log", fit.log, "Match log JSONL")->required();
  fit_cmd->add_option("--out", fit.out, "Output CSV (id,theta,pi)")
      ->required();
  fit_cmd->add_option("--dataset", fit.dataset,
                      "Dataset CSV; its items are fitted even if unmatched");
  fit_cmd->add_option("--lambda", fit.lambda, "Ridge pseudo-count")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--max-iterations", fit.max_iterations, "MM sweeps")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--tolerance", fit.tolerance,
                      "Stop when max |change in theta| falls below this")
      ->check(CLI::PositiveNumber);

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate scores");
  eval_cmd->add_option("--scores", eval.scores, "Score CSV")->required();
  eval_cmd->add_option("--reference", eval.reference,
                       "Reference CSV (latent order or gold labels)")
      ->required();
  eval_cmd->add_option("--mode", eval.mode, "rank | corr | detect")
      ->check(CLI::IsMember({"rank", "corr", "detect"}));
  eval_cmd->add_option("--rating", eval.rating,
                       "elo | bt (detection threshold)")
      ->check(CLI::IsMember({"elo", "bt"}));
  eval_cmd->add_option("--elo-start", eval.elo_start,
                       "Elo detection threshold");
  eval_cmd->add_option("--scores-column", eval.scores_column);
  eval_cmd->add_option("--reference-column", eval.reference_column);
  eval_cmd->add_option("--out", eval.out, "Also write the report here");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a simulation sweep");
  sweep_cmd->add_option("--grid", sweep.grid, "Sweep grid JSON")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output directory")->required();
  sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--quiet", sweep.quiet, "No progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*gen_cmd) return Guard([&] { return RunGen(gen); });
  if (*camp_cmd) return Guard([&] { return RunCampaignCmd(camp); });
  if (*fit_cmd) return Guard([&] { return RunFit(fit); });
  if (*eval_cmd) return Guard([&] { return RunEval(eval); });
  if (*sweep_cmd) return Guard([&] { return RunSweepCmd(sweep); });
  return kUsage;
}

}  // namespace
}  // namespace pcrank

int main(int argc, char** argv) { return pcrank::Main(argc, argv); }
