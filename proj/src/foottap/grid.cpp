#include "abi/foottap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "abi/common/error.hpp"

namespace abi::foottap {

std::string to_string(const Cell& cell) {
  return "r" + std::to_string(cell.row) + "c" + std::to_string(cell.col);
}

bool PolarBox::contains(double r, double theta) const {
  if (!(r >= r_lower && r < r_upper)) return false;
  if (theta < theta_lower) return false;
  return theta_upper_closed ? theta <= theta_upper : theta < theta_upper;
}

FootGrid::FootGrid(int rows, int cols, double row_height, double inner_radius, Point2 anchor,
                   Point2 facing)
    : rows_(rows),
      cols_(cols),
      row_height_(row_height),
      inner_radius_(inner_radius),
      anchor_(anchor),
      facing_(facing) {
  if (rows < 1 || cols < 1) fail(ErrorKind::InvalidArgument, "grid needs at least one row and column");
  if (!(row_height > 0.0)) fail(ErrorKind::InvalidArgument, "row height must be positive");
  if (!(inner_radius >= 0.0)) fail(ErrorKind::InvalidArgument, "inner radius must be non-negative");
  const double norm = std::hypot(facing.x, facing.y);
  if (!(norm > 0.0) || !std::isfinite(norm)) fail(ErrorKind::InvalidArgument, "facing must be a direction");
  facing_ = {facing.x / norm, facing.y / norm};
}

double FootGrid::sector_angle() const { return std::numbers::pi / cols_; }

void FootGrid::check(const Cell& cell) const {
  if (cell.row < 1 || cell.row > rows_ || cell.col < 1 || cell.col > cols_) {
    fail(ErrorKind::InvalidArgument, "cell " + to_string(cell) + " outside grid");
  }
}

PolarBox FootGrid::cell_bounds(const Cell& cell) const {
  check(cell);
  const double step = sector_angle();
  PolarBox box;
  box.r_lower = inner_radius_ + (cell.row - 1) * row_height_;
  box.r_upper = inner_radius_ + cell.row * row_height_;
  box.theta_lower = cell.col == cols_ ? 0.0 : std::numbers::pi - cell.col * step;
  box.theta_upper = cell.col == 1 ? std::numbers::pi : std::numbers::pi - (cell.col - 1) * step;
  box.theta_upper_closed = cell.col == 1;
  return box;
}

std::vector<Cell> FootGrid::cells() const {
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (int r = 1; r <= rows_; ++r)
    for (int c = 1; c <= cols_; ++c) out.push_back({r, c});
  return out;
}

Point2 FootGrid::to_body(Point2 p) const {
  const double dx = p.x - anchor_.x;
  const double dy = p.y - anchor_.y;
  // right = facing rotated by -90 deg
  return {dx * facing_.y - dy * facing_.x, dx * facing_.x + dy * facing_.y};
}

Point2 FootGrid::to_world(Point2 b) const {
  return {anchor_.x + b.x * facing_.y + b.y * facing_.x,
          anchor_.y - b.x * facing_.x + b.y * facing_.y};
}

Point2 FootGrid::centroid(const Cell& cell) const {
  const PolarBox box = cell_bounds(cell);
  const double r = 0.5 * (box.r_lower + box.r_upper);
  const double theta = 0.5 * (box.theta_lower + box.theta_upper);
  return to_world({r * std::cos(theta), r * std::sin(theta)});
}

FootGrid build_grid(int rows, int cols, double row_height, double inner_radius) {
  return FootGrid(rows, cols, row_height, inner_radius);
}

std::optional<Cell> hit_test(const FootGrid& grid, Point2 tap) {
  if (!std::isfinite(tap.x) || !std::isfinite(tap.y)) return std::nullopt;
  const Point2 b = grid.to_body(tap);
  const double r = std::hypot(b.x, b.y);
  const double theta = std::atan2(b.y, b.x);
  if (r < grid.inner_radius() || r >= grid.outer_radius() || theta < 0.0) return std::nullopt;

  // Arithmetic guess, then nudge against the exact cell edges so that the
  // result agrees with containment tests on cell_bounds().
  Cell cell{
      1 + static_cast<int>(std::floor((r - grid.inner_radius()) / grid.row_height())),
      1 + static_cast<int>(std::floor((std::numbers::pi - theta) / grid.sector_angle())),
  };
  cell.row = std::clamp(cell.row, 1, grid.rows());
  cell.col = std::clamp(cell.col, 1, grid.cols());
  for (int attempt = 0; attempt < 3; ++attempt) {
    const PolarBox box = grid.cell_bounds(cell);
    if (box.contains(r, theta)) return cell;
    if (r < box.r_lower && cell.row > 1) --cell.row;
    else if (r >= box.r_upper && cell.row < grid.rows()) ++cell.row;
    if (theta < box.theta_lower && cell.col < grid.cols()) ++cell.col;
    else if (theta >= box.theta_upper && !box.theta_upper_closed && cell.col > 1) --cell.col;
  }
  return std::nullopt;
}

}  // namespace abi::foottap
