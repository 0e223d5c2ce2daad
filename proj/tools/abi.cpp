#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "abi/common/error.hpp"
#include "abi/harness/config.hpp"
#include "abi/harness/experiment.hpp"
#include "abi/harness/export.hpp"
#include "abi/harness/latin_square.hpp"
#include "abi/harness/serve.hpp"
#include "abi/harness/stats.hpp"
#include "abi/infospace/server.hpp"

namespace {

using namespace abi;
using namespace abi::harness;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<double> parse_levels(const std::string& text, const std::string& name) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) fail(ErrorKind::InvalidConfig, "bad level for " + name + ": " + item);
    out.push_back(v);
  }
  if (out.empty()) fail(ErrorKind::InvalidConfig, "no levels given for " + name);
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("ABI_SEED");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 0);
  if (errno != 0 || *end != '\0') fail(ErrorKind::InvalidConfig, std::string("ABI_SEED is not an integer: ") + s);
  return v;
}

void setup_logging() {
  spdlog::set_default_logger(spdlog::stderr_logger_mt("abi"));
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("ABI_LOG"); lvl && *lvl) {
    const auto level = spdlog::level::from_str(lvl);
    if (level == spdlog::level::off && std::string(lvl) != "off") {
      spdlog::warn("unknown ABI_LOG level '{}', keeping warn", lvl);
    } else {
      spdlog::set_level(level);
    }
  }
}

// Blocks SIGINT/SIGTERM in every thread, runs `start` and waits for a signal.
template <class Start, class Stop>
void run_until_signal(Start start, Stop stop) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  std::thread worker(start);
  int sig = 0;
  sigwait(&set, &sig);
  spdlog::info("signal {}, shutting down", sig);
  stop();
  worker.join();
}

struct RunArgs {
  std::string technique;
  std::string config;
  std::string lanes, selection_time;
  std::vector<std::string> factors;
  std::optional<int> trials, participants, threads;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_run(const RunArgs& a) {
  ExperimentConfig cfg;
  if (!a.config.empty()) {
    cfg = load_config(a.config);
    if (!a.technique.empty() && technique_from_string(a.technique) != cfg.technique) {
      fail(ErrorKind::InvalidConfig, "technique argument disagrees with the config file");
    }
  } else {
    if (a.technique.empty()) fail(ErrorKind::InvalidConfig, "give a technique or --config");
    cfg.technique = technique_from_string(a.technique);
  }
  if (!a.lanes.empty()) cfg.factors["lanes"] = parse_levels(a.lanes, "lanes");
  if (!a.selection_time.empty()) cfg.factors["selection_time"] = parse_levels(a.selection_time, "selection_time");
  for (const auto& f : a.factors) {
    const auto eq = f.find('=');
    if (eq == std::string::npos || eq == 0) fail(ErrorKind::InvalidConfig, "--factor expects name=v1,v2: " + f);
    cfg.factors[f.substr(0, eq)] = parse_levels(f.substr(eq + 1), f.substr(0, eq));
  }
  if (a.trials) cfg.trials = *a.trials;
  if (a.participants) cfg.participants = *a.participants;
  if (a.threads) cfg.threads = *a.threads;
  if (a.seed) cfg.seed = *a.seed;
  if (const auto s = env_seed()) cfg.seed = *s;
  if (!a.out.empty()) cfg.out = a.out;

  spdlog::info("run {} seed={} trials={} participants={} threads={}", to_string(cfg.technique), cfg.seed, cfg.trials,
               cfg.participants, cfg.threads);
  const auto records = run_experiment(cfg);
  spdlog::info("{} records", records.size());

  if (!cfg.out || *cfg.out == "-") {
    write_records_jsonl(std::cout, records);
    return 0;
  }
  std::ofstream f(*cfg.out, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidConfig, "cannot write " + *cfg.out);
  if (ends_with(*cfg.out, ".csv")) {
    write_records_csv(f, records);
  } else {
    write_records_jsonl(f, records);
  }
  return 0;
}

int cmd_stats(const std::string& path, const std::string& group_by, const std::string& metric, double confidence,
              const std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + path);
  const auto records = ends_with(path, ".csv") ? read_records_csv(in) : read_records_jsonl(in);
  const auto groups = split_list(group_by);
  const auto stats = describe(records, groups, metric, confidence);
  if (out.empty() || out == "-") {
    write_stats_csv(std::cout, groups, stats);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + out);
    write_stats_csv(f, groups, stats);
  }
  return 0;
}

int cmd_latinsquare(int n) {
  for (const auto& row : balanced_latin_square(n)) {
    for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? " " : "") << row[i];
    std::cout << '\n';
  }
  return 0;
}

int cmd_serve(std::uint16_t port, const std::string& technique) {
  std::optional<Technique> t;
  if (!technique.empty()) t = technique_from_string(technique);
  auto server = make_playground_server(port, t);
  std::cout << "playground listening on 127.0.0.1:" << server->port() << std::endl;
  run_until_signal([&] { server->run(); }, [&] { server->stop(); });
  return 0;
}

std::vector<infospace::FeedItem> load_feed(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidConfig, "cannot read " + path);
  const auto doc = nlohmann::json::parse(in);
  if (!doc.is_array()) fail(ErrorKind::InvalidConfig, "feed must be a JSON array");
  std::vector<infospace::FeedItem> feed;
  for (const auto& j : doc) {
    infospace::FeedItem item;
    item.t = j.at("t").get<double>();
    item.content_ref = j.at("content").get<std::string>();
    if (j.contains("owner") && !j["owner"].is_null()) item.owner = j["owner"].get<std::string>();
    const std::string vis = j.value("vis", "public");
    if (vis != "public" && vis != "private") fail(ErrorKind::InvalidConfig, "feed vis must be public or private");
    item.scope = vis == "public" ? infospace::Scope::Public : infospace::Scope::Private;
    feed.push_back(std::move(item));
  }
  return feed;
}

int cmd_dropspace(std::uint16_t port, const std::string& feed_path, std::uint64_t seed) {
  if (const auto s = env_seed()) seed = *s;
  std::vector<infospace::FeedItem> feed;
  if (!feed_path.empty()) feed = load_feed(feed_path);
  infospace::DropServer server(port, infospace::SpaceConfig{}, std::move(feed), seed);
  std::cout << "dropspace listening on 127.0.0.1:" << server.port() << std::endl;
  run_until_signal([&] { server.run(); }, [&] { server.stop(); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Simulation harness and servers for the around-body interaction techniques"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Simulate an experiment and write trial records");
  run_cmd->add_option("technique", run.technique, "walkline | foottap | proximity");
  run_cmd->add_option("--config", run.config, "JSON experiment config")->check(CLI::ExistingFile);
  run_cmd->add_option("--lanes", run.lanes, "Lane counts, comma separated");
  run_cmd->add_option("--selection-time", run.selection_time, "Dwell times in seconds, comma separated");
  run_cmd->add_option("--factor", run.factors, "Any factor as name=v1,v2 (repeatable)");
  run_cmd->add_option("--trials", run.trials, "Trials per cell and participant");
  run_cmd->add_option("--participants", run.participants, "Simulated participants");
  run_cmd->add_option("--threads", run.threads, "Worker threads");
  run_cmd->add_option("--seed", run.seed, "Master seed (ABI_SEED overrides)");
  run_cmd->add_option("--out", run.out, "Output file; .csv for CSV, otherwise JSONL (default stdout)");

  std::string stats_in, group_by, metric = "success", stats_out;
  double confidence = 0.95;
  auto* stats_cmd = app.add_subcommand("stats", "Per-condition descriptive statistics of a record file");
  stats_cmd->add_option("records", stats_in, "Records (.jsonl or .csv)")->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--group-by", group_by, "Condition columns, comma separated");
  stats_cmd->add_option("--metric", metric, "success, tct or a metric column");
  stats_cmd->add_option("--confidence", confidence, "Interval level")->check(CLI::Range(0.5, 0.999999));
  stats_cmd->add_option("--out", stats_out, "Output CSV (default stdout)");

  int square_n = 0;
  auto* square_cmd = app.add_subcommand("latinsquare", "Print a balanced Latin square");
  square_cmd->add_option("n", square_n, "Number of conditions")->required();

  std::uint16_t serve_port = 7070;
  std::string serve_technique;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the playground protocol over TCP");
  serve_cmd->add_option("--port", serve_port, "Port (0 picks a free one)");
  serve_cmd->add_option("--technique", serve_technique, "Preconfigure each session with this technique");

  std::uint16_t drop_port = 7071;
  std::string feed_path;
  std::uint64_t drop_seed = 1;
  auto* drop_cmd = app.add_subcommand("dropspace", "Serve a shared drop space over TCP");
  drop_cmd->add_option("--port", drop_port, "Port (0 picks a free one)");
  drop_cmd->add_option("--feed", feed_path, "JSON array of {t, content, owner, vis}")->check(CLI::ExistingFile);
  drop_cmd->add_option("--seed", drop_seed, "Placement seed (ABI_SEED overrides)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*stats_cmd) return cmd_stats(stats_in, group_by, metric, confidence, stats_out);
    if (*square_cmd) return cmd_latinsquare(square_n);
    if (*serve_cmd) return cmd_serve(serve_port, serve_technique);
    if (*drop_cmd) return cmd_dropspace(drop_port, feed_path, drop_seed);
  } catch (const Error& e) {
    spdlog::error("{}: {}", to_string(e.kind()), e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  return 0;
}
