#pragma once

#include <vector>

namespace abi::harness {

/// Williams design. For even n: n rows, row 0 = 0, 1, n-1, 2, n-2, ... and
/// row i = row 0 + i (mod n). For odd n each row is followed by its
/// reverse, giving 2n rows. Throws invalid-argument for n < 2.
std::vector<std::vector<int>> balanced_latin_square(int n);

}  // namespace abi::harness
