#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "playpen/geometry.hpp"

namespace playpen {

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Boolean occupancy map over a regular grid. Cell (0,0) covers the world
/// square [origin, origin + resolution)^2; x grows with column index, y with
/// row index.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double resolution, Pose2 origin = {});

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const Pose2& origin() const { return origin_; }

  /// World extent covered by the grid.
  Rect bounds() const;

  bool in_bounds(int ix, int iy) const { return ix >= 0 && ix < width_ && iy >= 0 && iy < height_; }

  /// Out-of-range cells read as occupied.
  bool occupied(int ix, int iy) const { return !in_bounds(ix, iy) || cells_[iy * width_ + ix] != 0; }
  bool occupied(const Vec2& p) const;

  void set(int ix, int iy, bool occ);

  int cell_x(double x) const { return static_cast<int>(std::floor((x - origin_.x) / resolution_)); }
  int cell_y(double y) const { return static_cast<int>(std::floor((y - origin_.y) / resolution_)); }
  Vec2 cell_center(int ix, int iy) const {
    return {origin_.x + (ix + 0.5) * resolution_, origin_.y + (iy + 0.5) * resolution_};
  }

  /// Mark every cell whose center lies inside the rectangle as occupied.
  void fill_rect(const Rect& r, bool occ = true);

  /// Mark the one-cell perimeter ring as occupied.
  void fill_border();

  std::size_t occupied_count() const;

  /// ASCII format: "width height resolution_m" then height rows of width
  /// characters, '#' occupied and '.' free. The first row is the top of the
  /// map (largest y).
  static OccupancyGrid parse(const std::string& text);
  static OccupancyGrid load(const std::string& path);
  std::string to_text() const;
  void save(const std::string& path) const;

  bool operator==(const OccupancyGrid& o) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  double resolution_ = 0.0;
  Pose2 origin_{};
  std::vector<std::uint8_t> cells_;
};

/// Distance in meters from each cell center to the nearest occupied cell
/// center (exact Euclidean transform). Occupied cells read 0.
class DistanceField {
 public:
  DistanceField() = default;
  explicit DistanceField(const OccupancyGrid& grid);

  /// Clearance at a world point; points outside the grid read 0.
  double clearance(const Vec2& p) const;
  double clearance_cell(int ix, int iy) const;

 private:
  int width_ = 0;
  int height_ = 0;
  double resolution_ = 0.0;
  Pose2 origin_{};
  std::vector<double> dist_;
};

/// Default 6x5 m playpen at 0.05 m resolution with an occupied railing border.
OccupancyGrid make_playpen_grid();

}  // namespace playpen
