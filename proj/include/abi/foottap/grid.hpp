#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace abi::foottap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Grid cell, 1-based. Row 1 is the band closest to the foot, column 1 the
/// leftmost sector.
struct Cell {
  int row = 1;
  int col = 1;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::string to_string(const Cell& cell);  // "r2c3"

/// Polar extent of one cell in the body frame. Angles in radians, measured
/// counter-clockwise from the body's right (+x) axis.
struct PolarBox {
  double r_lower = 0.0;
  double r_upper = 0.0;
  double theta_lower = 0.0;
  double theta_upper = 0.0;
  bool theta_upper_closed = false;  // only the leftmost column owns 180 deg

  bool contains(double r, double theta) const;
};

/// Semicircular target wheel anchored at the dominant foot. Taps are given
/// in the tracking frame; `anchor` and `facing` place the body frame in it
/// (+y forward, +x to the right).
class FootGrid {
 public:
  FootGrid(int rows, int cols, double row_height = 0.085, double inner_radius = 0.15,
           Point2 anchor = {0.0, 0.0}, Point2 facing = {0.0, 1.0});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double row_height() const { return row_height_; }
  double inner_radius() const { return inner_radius_; }
  double outer_radius() const { return inner_radius_ + rows_ * row_height_; }
  double sector_angle() const;  // radians per column
  Point2 anchor() const { return anchor_; }
  Point2 facing() const { return facing_; }

  PolarBox cell_bounds(const Cell& cell) const;
  std::vector<Cell> cells() const;  // row-major

  Point2 to_body(Point2 p) const;
  Point2 to_world(Point2 body) const;

  /// Mid-radius, mid-angle point of a cell, in the tracking frame.
  Point2 centroid(const Cell& cell) const;

 private:
  void check(const Cell& cell) const;

  int rows_;
  int cols_;
  double row_height_;
  double inner_radius_;
  Point2 anchor_;
  Point2 facing_;
};

FootGrid build_grid(int rows, int cols, double row_height = 0.085, double inner_radius = 0.15);

/// Cell containing the tap, or nullopt for a miss.
std::optional<Cell> hit_test(const FootGrid& grid, Point2 tap);

}  // namespace abi::foottap
