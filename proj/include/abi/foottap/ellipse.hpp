#pragma once

#include <array>
#include <span>

#include "abi/foottap/grid.hpp"

namespace abi::foottap {

/// Covariance ellipse scaled to contain `coverage` of a fitted bivariate
/// Gaussian.
struct ProbabilityEllipse {
  Point2 center;
  double cov_xx = 0.0;
  double cov_xy = 0.0;
  double cov_yy = 0.0;
  std::array<double, 2> eigenvalues{};  // descending
  std::array<Point2, 2> axes{};         // unit eigenvectors
  double coverage = 0.95;
  double chi_square = 0.0;
  std::array<double, 2> semi_axes{};  // m
  double area = 0.0;                  // m^2

  /// Squared Mahalanobis distance from the center.
  double mahalanobis_sq(Point2 p) const;
  /// Strictly inside the scaled ellipse.
  bool contains(Point2 p) const { return mahalanobis_sq(p) < chi_square; }
};

/// Chi-square quantile with two degrees of freedom: -2 ln(1 - p).
double chi_square_2dof_quantile(double p);

/// Sample covariance (n - 1) ellipse. Throws degenerate-data for fewer than
/// three points or a rank-deficient covariance.
ProbabilityEllipse probability_ellipse(std::span<const Point2> points, double coverage = 0.95);

/// Fraction of `others` lying strictly inside the ellipse.
double ellipse_overlap(const ProbabilityEllipse& ellipse, std::span<const Point2> others);

}  // namespace abi::foottap
