#include "abi/harness/export.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "abi/common/error.hpp"

namespace abi::harness {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(ErrorKind::InvalidData, "bad number in CSV: " + std::string(s));
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view s) {
  Int v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(ErrorKind::InvalidData, "bad integer in CSV: " + std::string(s));
  }
  return v;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) fail(ErrorKind::InvalidData, "unterminated quote in CSV");
  return fields;
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  std::set<std::string> cond_keys, metric_keys;
  for (const auto& r : records) {
    for (const auto& [k, v] : r.condition) cond_keys.insert(k);
    for (const auto& [k, v] : r.metrics) metric_keys.insert(k);
  }
  out << "technique";
  for (const auto& k : cond_keys) out << ',' << quote(k);
  out << ",target,success,tct";
  for (const auto& k : metric_keys) out << ',' << quote(k);
  out << ",seed,participant,trial\n";
  for (const auto& r : records) {
    out << to_string(r.technique);
    for (const auto& k : cond_keys) {
      out << ',';
      if (auto it = r.condition.find(k); it != r.condition.end()) out << format_number(it->second);
    }
    out << ',' << quote(r.target) << ',' << (r.success ? 1 : 0) << ',' << format_number(r.tct);
    for (const auto& k : metric_keys) {
      out << ',';
      if (auto it = r.metrics.find(k); it != r.metrics.end()) out << format_number(it->second);
    }
    out << ',' << r.seed << ',' << r.participant << ',' << r.trial << '\n';
  }
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::InvalidData, "CSV has no header");
  const auto header = split_csv_line(line);
  std::size_t target_col = header.size(), seed_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "target" && target_col == header.size()) target_col = i;
    if (header[i] == "seed") seed_col = i;
  }
  if (header.empty() || header[0] != "technique" || target_col + 3 > seed_col || seed_col + 3 != header.size() ||
      header[target_col + 1] != "success" || header[target_col + 2] != "tct" ||
      header[seed_col + 1] != "participant" || header[seed_col + 2] != "trial") {
    fail(ErrorKind::InvalidData, "unexpected CSV header");
  }

  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) fail(ErrorKind::InvalidData, "CSV row has the wrong number of fields");
    TrialRecord r;
    r.technique = technique_from_string(f[0]);
    for (std::size_t i = 1; i < target_col; ++i) {
      if (!f[i].empty()) r.condition[header[i]] = parse_number(f[i]);
    }
    r.target = f[target_col];
    const auto& success = f[target_col + 1];
    if (success != "0" && success != "1") fail(ErrorKind::InvalidData, "success must be 0 or 1");
    r.success = success == "1";
    r.tct = parse_number(f[target_col + 2]);
    for (std::size_t i = target_col + 3; i < seed_col; ++i) {
      if (!f[i].empty()) r.metrics[header[i]] = parse_number(f[i]);
    }
    r.seed = parse_int<std::uint64_t>(f[seed_col]);
    r.participant = parse_int<int>(f[seed_col + 1]);
    r.trial = parse_int<int>(f[seed_col + 2]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_records_jsonl(std::ostream& out, const std::vector<TrialRecord>& records) {
  for (const auto& r : records) {
    json j;
    j["technique"] = to_string(r.technique);
    j["condition"] = r.condition;
    j["target"] = r.target;
    j["success"] = r.success;
    j["tct"] = r.tct;
    j["metrics"] = r.metrics;
    j["seed"] = r.seed;
    j["participant"] = r.participant;
    j["trial"] = r.trial;
    out << j.dump() << '\n';
  }
}

std::vector<TrialRecord> read_records_jsonl(std::istream& in) {
  std::vector<TrialRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      TrialRecord r;
      r.technique = technique_from_string(j.at("technique").get<std::string>());
      r.condition = j.at("condition").get<std::map<std::string, double>>();
      r.target = j.at("target").get<std::string>();
      r.success = j.at("success").get<bool>();
      r.tct = j.at("tct").get<double>();
      r.metrics = j.at("metrics").get<std::map<std::string, double>>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.participant = j.at("participant").get<int>();
      r.trial = j.at("trial").get<int>();
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidData, std::string("bad record line: ") + e.what());
    }
  }
  return records;
}

void write_stats_csv(std::ostream& out, const std::vector<std::string>& group_by,
                     const std::vector<GroupStats>& stats) {
  for (const auto& g : group_by) out << quote(g) << ',';
  out << "n,mean,sd,se,ci_lo,ci_hi\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& s : stats) {
    for (const auto& g : group_by) out << format_number(s.group.at(g)) << ',';
    out << s.stats.n << ',' << format_number(s.stats.mean) << ',' << opt(s.stats.sd) << ',' << opt(s.stats.se)
        << ',' << opt(s.stats.ci_lo) << ',' << opt(s.stats.ci_hi) << '\n';
  }
}

}  // namespace abi::harness
