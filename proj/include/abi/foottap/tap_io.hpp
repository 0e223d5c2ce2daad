#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "abi/foottap/classifier.hpp"

namespace abi::foottap {

/// One logged tap: {x, y, row, col, condition, participant, t}. row/col are
/// null for unlabeled taps.
struct TapRecord {
  double x = 0.0;
  double y = 0.0;
  std::optional<Cell> cell;
  std::string condition;  // e.g. "3x6"
  int participant = 0;
  double t = 0.0;

  TapSample sample() const { return {{x, y}, cell}; }
  friend bool operator==(const TapRecord&, const TapRecord&) = default;
};

void write_taps_jsonl(std::ostream& out, const std::vector<TapRecord>& taps);
std::vector<TapRecord> read_taps_jsonl(std::istream& in);

}  // namespace abi::foottap
