#include "abi/gaitsim/taps.hpp"

#include <cmath>
#include <numbers>

#include "abi/common/error.hpp"
#include "abi/common/random.hpp"
#include "abi/foottap/ellipse.hpp"

namespace abi::gaitsim {

double sd_from_ellipse_area(double area, double coverage) {
  return std::sqrt(area / (std::numbers::pi * foottap::chi_square_2dof_quantile(coverage)));
}

TapScatterParams TapScatterParams::from_ellipse_areas(double row1_area, double row3_area) {
  const double s1 = sd_from_ellipse_area(row1_area);
  const double s3 = sd_from_ellipse_area(row3_area);
  return TapScatterParams{{s1, 0.5 * (s1 + s3), s3}};
}

double TapScatterParams::sd(int row) const {
  if (row < 1) fail(ErrorKind::InvalidArgument, "rows are 1-based");
  const auto idx = static_cast<std::size_t>(row - 1);
  if (idx < row_sd.size()) return row_sd[idx];
  if (row_sd.size() < 2) return row_sd.back();
  const double step = row_sd.back() - row_sd[row_sd.size() - 2];
  return row_sd.back() + step * static_cast<double>(idx - (row_sd.size() - 1));
}

void TapScatterParams::validate() const {
  if (row_sd.empty()) fail(ErrorKind::InvalidConfig, "tap scatter needs at least one row");
  for (std::size_t i = 0; i < row_sd.size(); ++i) {
    if (!(row_sd[i] >= 0.0)) fail(ErrorKind::InvalidConfig, "tap scatter must be non-negative");
    if (i > 0 && row_sd[i] < row_sd[i - 1]) fail(ErrorKind::InvalidConfig, "tap scatter must grow with row");
  }
  if (!(radial_aspect > 0.0) || !std::isfinite(radial_aspect)) {
    fail(ErrorKind::InvalidConfig, "radial_aspect must be positive");
  }
}

foottap::TapSample gen_tap(const foottap::FootGrid& grid, const foottap::Cell& target,
                           const TapScatterParams& scatter, std::uint64_t seed) {
  const foottap::Point2 c = grid.centroid(target);
  const double dx = c.x - grid.anchor().x, dy = c.y - grid.anchor().y;
  const double len = std::hypot(dx, dy);
  const double ux = dx / len, uy = dy / len;
  Rng rng(derive_seed(seed));
  const double radial = gaussian(rng, 0.0, scatter.radial_sd(target.row));
  const double tangential = gaussian(rng, 0.0, scatter.tangential_sd(target.row));
  return {{c.x + radial * ux - tangential * uy, c.y + radial * uy + tangential * ux}, target};
}

}  // namespace abi::gaitsim
