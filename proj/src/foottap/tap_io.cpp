#include "abi/foottap/tap_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "abi/common/error.hpp"

namespace abi::foottap {

using nlohmann::json;

void write_taps_jsonl(std::ostream& out, const std::vector<TapRecord>& taps) {
  for (const auto& tap : taps) {
    json j;
    j["x"] = tap.x;
    j["y"] = tap.y;
    j["row"] = tap.cell ? json(tap.cell->row) : json(nullptr);
    j["col"] = tap.cell ? json(tap.cell->col) : json(nullptr);
    j["condition"] = tap.condition;
    j["participant"] = tap.participant;
    j["t"] = tap.t;
    out << j.dump() << '\n';
  }
}

std::vector<TapRecord> read_taps_jsonl(std::istream& in) {
  std::vector<TapRecord> taps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      TapRecord tap;
      tap.x = j.at("x").get<double>();
      tap.y = j.at("y").get<double>();
      const json& row = j.at("row");
      const json& col = j.at("col");
      if (row.is_null() != col.is_null()) fail(ErrorKind::InvalidData, "row and col must both be set or null");
      if (!row.is_null()) tap.cell = Cell{row.get<int>(), col.get<int>()};
      tap.condition = j.at("condition").get<std::string>();
      tap.participant = j.at("participant").get<int>();
      tap.t = j.at("t").get<double>();
      taps.push_back(std::move(tap));
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidData, "tap line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return taps;
}

}  // namespace abi::foottap
