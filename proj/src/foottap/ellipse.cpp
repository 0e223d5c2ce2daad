#include "abi/foottap/ellipse.hpp"

#include <cmath>
#include <numbers>

#include "abi/common/error.hpp"

namespace abi::foottap {

double chi_square_2dof_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::InvalidArgument, "coverage must be in (0, 1)");
  return -2.0 * std::log1p(-p);
}

double ProbabilityEllipse::mahalanobis_sq(Point2 p) const {
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  const double det = cov_xx * cov_yy - cov_xy * cov_xy;
  return (cov_yy * dx * dx - 2.0 * cov_xy * dx * dy + cov_xx * dy * dy) / det;
}

ProbabilityEllipse probability_ellipse(std::span<const Point2> points, double coverage) {
  ProbabilityEllipse e;
  e.coverage = coverage;
  e.chi_square = chi_square_2dof_quantile(coverage);
  const std::size_t n = points.size();
  if (n < 3) fail(ErrorKind::DegenerateData, "need at least three points for an ellipse");

  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - mx;
    const double dy = p.y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double denom = static_cast<double>(n - 1);
  e.center = {mx, my};
  e.cov_xx = sxx / denom;
  e.cov_xy = sxy / denom;
  e.cov_yy = syy / denom;

  const double trace = e.cov_xx + e.cov_yy;
  const double det = e.cov_xx * e.cov_yy - e.cov_xy * e.cov_xy;
  if (!(trace > 0.0) || !(det > 1e-12 * trace * trace)) {
    fail(ErrorKind::DegenerateData, "rank-deficient covariance (collinear points)");
  }

  const double half_gap = std::hypot(0.5 * (e.cov_xx - e.cov_yy), e.cov_xy);
  e.eigenvalues = {0.5 * trace + half_gap, 0.5 * trace - half_gap};
  Point2 major{1.0, 0.0};
  if (e.cov_xy != 0.0) {
    const double vx = e.eigenvalues[0] - e.cov_yy;
    const double vy = e.cov_xy;
    const double norm = std::hypot(vx, vy);
    major = {vx / norm, vy / norm};
  } else if (e.cov_yy > e.cov_xx) {
    major = {0.0, 1.0};
  }
  e.axes = {major, Point2{-major.y, major.x}};
  e.semi_axes = {std::sqrt(e.chi_square * e.eigenvalues[0]), std::sqrt(e.chi_square * e.eigenvalues[1])};
  e.area = std::numbers::pi * e.chi_square * std::sqrt(det);
  return e;
}

double ellipse_overlap(const ProbabilityEllipse& ellipse, std::span<const Point2> others) {
  if (others.empty()) fail(ErrorKind::InvalidArgument, "no points to test for overlap");
  std::size_t inside = 0;
  for (const auto& p : others)
    if (ellipse.contains(p)) ++inside;
  return static_cast<double>(inside) / static_cast<double>(others.size());
}

}  // namespace abi::foottap
