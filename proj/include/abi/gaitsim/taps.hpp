#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "abi/foottap/classifier.hpp"

namespace abi::gaitsim {

/// Tap scatter per grid row (row 1 nearest the foot). `row_sd` is the
/// geometric-mean sd, so it fixes the ellipse area; `radial_aspect` is the
/// ratio of the radial to the tangential sd (1 = isotropic).
struct TapScatterParams {
  std::vector<double> row_sd{0.0163, 0.0327, 0.0491};  // m
  double radial_aspect = 1.0;

  /// Scatter whose 95% ellipses have the given areas for rows 1 and 3;
  /// row 2 is interpolated.
  static TapScatterParams from_ellipse_areas(double row1_area, double row3_area);
  /// Tap spread measured with the targets shown on the floor.
  static TapScatterParams direct() { return from_ellipse_areas(0.005, 0.0454); }
  /// Tap spread measured with the targets shown in a floating panel.
  static TapScatterParams indirect() { return from_ellipse_areas(0.042, 0.074); }

  /// sd for a row; rows beyond the table extrapolate linearly.
  double sd(int row) const;
  double radial_sd(int row) const { return sd(row) * std::sqrt(radial_aspect); }
  double tangential_sd(int row) const { return sd(row) / std::sqrt(radial_aspect); }
  void validate() const;
};

/// sd of an isotropic Gaussian whose 95% ellipse has the given area.
double sd_from_ellipse_area(double area, double coverage = 0.95);

/// Gaussian tap around the polar centroid of the target cell, with the
/// radial axis pointing away from the anchor.
foottap::TapSample gen_tap(const foottap::FootGrid& grid, const foottap::Cell& target,
                           const TapScatterParams& scatter, std::uint64_t seed);

}  // namespace abi::gaitsim
