#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "abi/common/error.hpp"
#include "abi/harness/config.hpp"
#include "abi/harness/experiment.hpp"
#include "abi/harness/export.hpp"
#include "abi/harness/latin_square.hpp"
#include "abi/harness/playground.hpp"
#include "abi/harness/serve.hpp"
#include "abi/harness/stats.hpp"
#include "abi/walkline/scoring.hpp"

using namespace abi;
using namespace abi::harness;
using doctest::Approx;
using nlohmann::json;

namespace {

// Row/column permutations and ordered-adjacent-pair counts.
void check_square(int n) {
  const auto sq = balanced_latin_square(n);
  const std::size_t rows = n % 2 ? 2 * n : n;
  REQUIRE(sq.size() == rows);
  std::vector<std::vector<int>> pairs(n, std::vector<int>(n, 0));
  for (const auto& row : sq) {
    REQUIRE(row.size() == static_cast<std::size_t>(n));
    CHECK(std::set<int>(row.begin(), row.end()).size() == static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i) pairs[row[i]][row[i + 1]]++;
  }
  for (std::size_t block = 0; block < rows; block += n) {
    for (int c = 0; c < n; ++c) {
      std::set<int> col;
      for (int r = 0; r < n; ++r) col.insert(sq[block + r][c]);
      CHECK(col.size() == static_cast<std::size_t>(n));
    }
  }
  const int expected = n % 2 ? 2 : 1;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) CHECK(pairs[a][b] == expected);
    }
  }
}

TrialRecord random_record(std::mt19937_64& rng, int i) {
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  TrialRecord r;
  r.technique = static_cast<Technique>(i % 3);
  r.condition = {{"lanes", static_cast<double>(8 + 4 * (i % 3))}, {"selection_time", u(rng)}};
  r.target = i % 7 == 0 ? "a,\"quoted\" target" : "+" + std::to_string(i % 5);
  r.success = i % 2 == 0;
  r.tct = u(rng) * 1e-7;
  r.metrics["walked_distance"] = u(rng);
  if (i % 4) r.metrics["selected_lane"] = i % 9 - 4;
  if (i % 11 == 0) r.metrics["tiny"] = 5e-324;
  r.seed = rng();
  r.participant = i % 6;
  r.trial = i;
  return r;
}

ExperimentConfig small_walk(int trials) {
  ExperimentConfig c;
  c.technique = Technique::Walkline;
  c.trials = trials;
  c.seed = 17;
  return c;
}

}  // namespace

TEST_CASE("balanced latin squares") {
  CHECK(balanced_latin_square(2) == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(balanced_latin_square(4) ==
        std::vector<std::vector<int>>{{0, 1, 3, 2}, {1, 2, 0, 3}, {2, 3, 1, 0}, {3, 0, 2, 1}});
  for (int n = 2; n <= 12; ++n) check_square(n);
  CHECK_THROWS_AS(balanced_latin_square(1), Error);
}

TEST_CASE("describe against hand computation") {
  const std::vector<double> v{1, 2, 3};
  const auto s = describe(v);
  CHECK(s.n == 3);
  CHECK(s.mean == Approx(2.0));
  CHECK(*s.sd == Approx(1.0));
  CHECK(*s.se == Approx(0.5773502692).epsilon(1e-9));
  // t(0.975, 2) = 4.302652729696 from a statistical table
  CHECK(*s.ci_lo == Approx(2 - 4.302652729696142 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(*s.ci_hi == Approx(2 + 4.302652729696142 / std::sqrt(3.0)).epsilon(1e-9));

  const std::vector<double> flat{4, 4, 4, 4};
  const auto f = describe(flat);
  CHECK(*f.sd == 0.0);
  CHECK(*f.ci_hi - *f.ci_lo == 0.0);

  const std::vector<double> one{7};
  const auto o = describe(one);
  CHECK(o.mean == 7.0);
  CHECK_FALSE(o.sd.has_value());
  CHECK_FALSE(o.ci_lo.has_value());
  CHECK_THROWS_AS(describe(std::vector<double>{}), Error);
}

TEST_CASE("student t distribution") {
  CHECK(student_t_cdf(0.0, 4) == Approx(0.5));
  CHECK(student_t_cdf(1.5, 7) == Approx(0.911350756505015).epsilon(1e-10));
  CHECK(student_t_cdf(-1.5, 7) == Approx(1 - 0.911350756505015).epsilon(1e-10));
  CHECK(student_t_quantile(0.9, 5) == Approx(1.4758840488558216).epsilon(1e-9));
  CHECK(student_t_quantile(0.975, 2) == Approx(4.302652729696142).epsilon(1e-9));
  CHECK(student_t_quantile(0.5, 3) == Approx(0.0));
}

TEST_CASE("grouped describe is consistent with its parts") {
  std::mt19937_64 rng(1);
  std::vector<TrialRecord> a, b;
  for (int i = 0; i < 300; ++i) (i % 3 ? a : b).push_back(random_record(rng, i));
  auto all = a;
  all.insert(all.end(), b.begin(), b.end());
  const auto ga = describe(a, {"lanes"}, "walked_distance");
  const auto gb = describe(b, {"lanes"}, "walked_distance");
  const auto gall = describe(all, {"lanes"}, "walked_distance");
  for (const auto& g : gall) {
    std::size_t n = 0;
    double sum = 0;
    for (const auto* part : {&ga, &gb}) {
      for (const auto& p : *part) {
        if (p.group == g.group) {
          n += p.stats.n;
          sum += p.stats.mean * static_cast<double>(p.stats.n);
        }
      }
    }
    CHECK(g.stats.n == n);
    CHECK(g.stats.mean == Approx(sum / static_cast<double>(n)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(describe(all, {"lanes"}, "no_such_metric"), Error);
}

TEST_CASE("record export round trips") {
  std::mt19937_64 rng(42);
  std::vector<TrialRecord> recs;
  for (int i = 0; i < 1000; ++i) recs.push_back(random_record(rng, i));

  std::stringstream csv;
  write_records_csv(csv, recs);
  CHECK(read_records_csv(csv) == recs);

  std::stringstream jl;
  write_records_jsonl(jl, recs);
  CHECK(read_records_jsonl(jl) == recs);
}

TEST_CASE("empty export and stats schema") {
  std::stringstream csv;
  write_records_csv(csv, {});
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(text.rfind("technique,", 0) == 0);

  std::stringstream st;
  const std::vector<double> v{1, 2, 3};
  write_stats_csv(st, {"lanes"}, {GroupStats{{{"lanes", 8}}, describe(v)}, GroupStats{{{"lanes", 12}}, describe(std::vector<double>{5})}});
  std::string header, row1, row2;
  std::getline(st, header);
  std::getline(st, row1);
  std::getline(st, row2);
  CHECK(header == "lanes,n,mean,sd,se,ci_lo,ci_hi");
  CHECK(row1.rfind("8,3,2,1,", 0) == 0);
  CHECK(row2 == "12,1,5,,,,");
}

TEST_CASE("shortest number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(8.0) == "8");
  for (double v : {1.0 / 3.0, 1e-300, 123456789.123, -0.0}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("config parsing") {
  const auto c = parse_config(R"({"technique":"walkline","factors":{"lanes":[8,16],"selection_time":1},
                                  "trials":5,"seed":9,"walk":{"preset":"noiseless","speed_min":1.1}})");
  CHECK(c.technique == Technique::Walkline);
  CHECK(c.factors.at("lanes") == std::vector<double>{8, 16});
  CHECK(c.factors.at("selection_time") == std::vector<double>{1});
  CHECK(c.trials == 5);
  CHECK(c.seed == 9);
  CHECK(c.walk.lateral_noise_sd == 0.0);
  CHECK(c.walk.speed_min == 1.1);

  auto rejects = [](const char* text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::InvalidConfig;
    }
    return false;
  };
  CHECK(rejects(R"({"technique":"walkline","trails":5})"));
  CHECK(rejects(R"({"technique":"walkline","walk":{"sped":1}})"));
  CHECK(rejects(R"({"technique":"hover"})"));
  CHECK(rejects(R"({"trials":5})"));
  CHECK(rejects(R"({"technique":"foottap","factors":{"lanes":[8]}})"));
  CHECK(rejects(R"({"technique":"walkline","trials":-1})"));
  CHECK(rejects(R"({"technique":"walkline","trials":"ten"})"));
  CHECK(rejects("not json"));
}

TEST_CASE("experiment produces one record per trial") {
  const auto recs = run_experiment(small_walk(100));
  CHECK(recs.size() == 900);
  std::map<std::pair<double, double>, int> per_cell;
  for (const auto& r : recs) per_cell[{r.condition.at("lanes"), r.condition.at("selection_time")}]++;
  CHECK(per_cell.size() == 9);
  for (const auto& [cell, n] : per_cell) CHECK(n == 100);
  CHECK(std::is_sorted(recs.begin(), recs.end(), canonical_less));
}

TEST_CASE("zero-noise walkers always succeed") {
  auto cfg = small_walk(20);
  cfg.walk = gaitsim::WalkBehavior::noiseless();
  for (const auto& r : run_experiment(cfg)) {
    CHECK(r.success);
    CHECK(r.metrics.at("stabilizing_error") == 0.0);
  }
}

TEST_CASE("experiments are deterministic and thread-count independent") {
  auto cfg = small_walk(15);
  cfg.participants = 3;
  const auto a = run_experiment(cfg);
  CHECK(run_experiment(cfg) == a);
  cfg.threads = 4;
  CHECK(run_experiment(cfg) == a);
}

TEST_CASE("participants follow the latin square order") {
  auto cfg = small_walk(2);
  cfg.participants = 2;
  const auto recs = run_experiment(cfg);
  CHECK(recs.size() == 36);
  std::set<std::pair<int, double>> blocks;
  for (const auto& r : recs) blocks.insert({r.participant, r.metrics.at("block")});
  CHECK(blocks.size() == 18);
}

TEST_CASE("foottap and proximity experiments") {
  ExperimentConfig f;
  f.technique = Technique::Foottap;
  f.trials = 20;
  f.factors["indirect"] = {0, 1};
  const auto fr = run_experiment(f);
  CHECK(fr.size() == 9 * 2 * 20);

  ExperimentConfig p;
  p.technique = Technique::Proximity;
  p.trials = 20;
  const auto pr = run_experiment(p);
  CHECK(pr.size() == 6 * 20);
  for (const auto& r : pr) CHECK(r.tct > 0.0);

  ExperimentConfig bad;
  bad.technique = Technique::Proximity;
  bad.factors["layers"] = {1};
  CHECK_THROWS_AS(run_experiment(bad), Error);
}

TEST_CASE("playground walkline session matches offline scoring") {
  PlaygroundSession s;
  auto reply = s.handle(R"({"type":"configure","technique":"walkline","params":{"lanes":8,"target":2}})");
  REQUIRE(reply.size() == 1);
  const auto conf = json::parse(reply[0]);
  CHECK(conf["layout"]["lanes"] == 8);
  CHECK(conf["layout"]["lane_width"].get<double>() == Approx(1.0 / 9));

  const auto layout = walkline::build_lanes(8);
  std::vector<walkline::WalkSample> trace;
  json selected;
  double last_fraction = -1;
  for (int k = 0; k < 300 && selected.is_null(); ++k) {
    const double t = k / 60.0;
    const double x = t < 0.5 ? 0.0 : std::min(1.0, (t - 0.5) / 0.4) * layout.center(2);
    trace.push_back({t, x, 1.2 * t});
    for (const auto& line : s.handle(json{{"type", "input"}, {"t", t}, {"x", x}, {"y", 1.2 * t}}.dump())) {
      const auto j = json::parse(line);
      if (j["type"] == "selected") selected = j;
      if (j["type"] == "state") last_fraction = j["dwell_fraction"].get<double>();
    }
  }
  REQUIRE_FALSE(selected.is_null());
  CHECK(selected["target"] == 2);
  CHECK(last_fraction == Approx(1.0));
  const auto offline = walkline::score_trial(trace, 2, {}, layout, 0.0);
  CHECK(selected["metrics"]["tct"].get<double>() == offline.tct);
  CHECK(selected["metrics"]["success"] == offline.success);
  CHECK(selected["metrics"]["walked_distance"].get<double>() == offline.walked_distance);

  const auto after = json::parse(s.handle(R"({"type":"input","t":9,"x":0,"y":0})").at(0));
  CHECK(after["kind"] == "invalid-state");
}

TEST_CASE("playground foottap and proximity sessions") {
  PlaygroundSession s;
  const auto conf = json::parse(s.handle(R"({"type":"configure","technique":"foottap","params":{"rows":3,"cols":6}})")[0]);
  CHECK(conf["layout"]["cells"].size() == 18);
  const auto hit = s.handle(R"({"type":"tap","x":0.0,"y":0.25})");
  REQUIRE(hit.size() == 2);
  CHECK(json::parse(hit[1])["target"] == "r2c3");
  const auto miss = s.handle(R"({"type":"tap","x":0.0,"y":-0.25})");
  CHECK(miss.size() == 1);
  CHECK(json::parse(miss[0])["active"].is_null());

  s.handle(R"({"type":"configure","technique":"proximity","params":{"min_distance":0.125,"max_distance":0.625,"layers":5}})");
  CHECK(json::parse(s.handle(R"({"type":"distance","t":0,"d":0.125})")[0])["active"] == 0);
  const auto moved = json::parse(s.handle(R"({"type":"distance","t":0.1,"d":0.30})")[0]);
  CHECK(moved["active"] == 1);
  CHECK(moved["events"].size() == 2);
}

TEST_CASE("playground errors") {
  PlaygroundSession s;
  auto kind = [&](const char* line) { return json::parse(s.handle(line).at(0))["kind"].get<std::string>(); };
  CHECK(kind(R"({"type":"input","t":0,"x":0,"y":0})") == "invalid-state");
  CHECK(kind(R"({"type":"configure","technique":"walkline","params":{"lanes":7}})") == "invalid-argument");
  CHECK(kind(R"({"type":"configure","technique":"walkline","params":{"colour":1}})") == "invalid-argument");
  CHECK(kind(R"({"type":"configure","technique":"teleport"})") == "invalid-argument");
  CHECK(kind("{") == "invalid-argument");
  s.handle(R"({"type":"configure","technique":"walkline"})");
  CHECK(kind(R"({"type":"tap","x":0,"y":0})") == "invalid-state");
  s.handle(R"({"type":"input","t":1,"x":0,"y":0})");
  CHECK(kind(R"({"type":"input","t":0.5,"x":0,"y":0})") == "invalid-argument");
}

TEST_CASE("playground server sessions are independent") {
  auto server = make_playground_server(0, Technique::Walkline);
  std::thread runner([&] { server->run(); });
  {
    net::LineClient a("127.0.0.1", server->port()), b("127.0.0.1", server->port());
    b.send(R"({"type":"configure","technique":"foottap"})");
    REQUIRE(b.recv(2000).has_value());
    a.send(R"({"type":"input","t":0,"x":0.3,"y":0})");
    const auto sa = a.recv(2000);
    REQUIRE(sa.has_value());
    CHECK(json::parse(*sa)["active"] == 3);
    b.send(R"({"type":"tap","x":0,"y":0.25})");
    const auto sb = b.recv(2000);
    REQUIRE(sb.has_value());
    CHECK(json::parse(*sb)["active"] == "r2c3");
  }
  server->stop();
  runner.join();
}
