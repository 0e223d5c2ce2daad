#include "abi/harness/latin_square.hpp"

#include <algorithm>

#include "abi/common/error.hpp"

namespace abi::harness {

std::vector<std::vector<int>> balanced_latin_square(int n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "latin square needs n >= 2");
  std::vector<int> first(static_cast<std::size_t>(n));
  for (int j = 0, lo = 1, hi = n - 1; j < n; ++j) {
    if (j == 0) {
      first[0] = 0;
    } else if (j % 2 == 1) {
      first[j] = lo++;
    } else {
      first[j] = hi--;
    }
  }
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<int> row(first);
    for (int& v : row) v = (v + i) % n;
    rows.push_back(row);
    if (n % 2 == 1) {
      std::reverse(row.begin(), row.end());
      rows.push_back(std::move(row));
    }
  }
  if (n % 2 == 1) {
    // forward rows first, then the reversed ones
    std::vector<std::vector<int>> ordered;
    for (std::size_t i = 0; i < rows.size(); i += 2) ordered.push_back(rows[i]);
    for (std::size_t i = 1; i < rows.size(); i += 2) ordered.push_back(rows[i]);
    rows = std::move(ordered);
  }
  return rows;
}

}  // namespace abi::harness
