#include "playpen/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace playpen {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution, Pose2 origin)
    : width_(width), height_(height), resolution_(resolution), origin_(origin),
      cells_(static_cast<std::size_t>(width) * height, 0) {
  if (width <= 0 || height <= 0) throw GridError("grid dimensions must be positive");
  if (resolution <= 0.0) throw GridError("grid resolution must be positive");
}

Rect OccupancyGrid::bounds() const {
  return {origin_.x, origin_.y, origin_.x + width_ * resolution_, origin_.y + height_ * resolution_};
}

bool OccupancyGrid::occupied(const Vec2& p) const { return occupied(cell_x(p.x), cell_y(p.y)); }

void OccupancyGrid::set(int ix, int iy, bool occ) {
  if (!in_bounds(ix, iy)) throw GridError("cell index out of range");
  cells_[iy * width_ + ix] = occ ? 1 : 0;
}

void OccupancyGrid::fill_rect(const Rect& r, bool occ) {
  for (int iy = 0; iy < height_; ++iy) {
    for (int ix = 0; ix < width_; ++ix) {
      if (r.contains(cell_center(ix, iy))) cells_[iy * width_ + ix] = occ ? 1 : 0;
    }
  }
}

void OccupancyGrid::fill_border() {
  for (int ix = 0; ix < width_; ++ix) {
    cells_[ix] = 1;
    cells_[(height_ - 1) * width_ + ix] = 1;
  }
  for (int iy = 0; iy < height_; ++iy) {
    cells_[iy * width_] = 1;
    cells_[iy * width_ + width_ - 1] = 1;
  }
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

OccupancyGrid OccupancyGrid::parse(const std::string& text) {
  std::istringstream is(text);
  int w = 0, h = 0;
  double res = 0.0;
  if (!(is >> w >> h >> res)) throw GridError("bad grid header");
  if (w <= 0 || h <= 0 || res <= 0.0) throw GridError("bad grid header values");
  OccupancyGrid g(w, h, res);
  std::string line;
  std::getline(is, line);  // rest of header line
  for (int row = 0; row < h; ++row) {
    if (!std::getline(is, line)) throw GridError("missing grid row " + std::to_string(row));
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (static_cast<int>(line.size()) != w)
      throw GridError("grid row " + std::to_string(row) + " has wrong length");
    int iy = h - 1 - row;  // first row is the top of the map
    for (int ix = 0; ix < w; ++ix) {
      char c = line[ix];
      if (c == '#') g.set(ix, iy, true);
      else if (c != '.') throw GridError(std::string("bad grid character '") + c + "'");
    }
  }
  return g;
}

OccupancyGrid OccupancyGrid::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GridError("cannot open grid file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string OccupancyGrid::to_text() const {
  std::ostringstream os;
  os << width_ << ' ' << height_ << ' ' << resolution_ << '\n';
  for (int row = 0; row < height_; ++row) {
    int iy = height_ - 1 - row;
    for (int ix = 0; ix < width_; ++ix) os << (occupied(ix, iy) ? '#' : '.');
    os << '\n';
  }
  return os.str();
}

void OccupancyGrid::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw GridError("cannot write grid file: " + path);
  f << to_text();
}

namespace {

// 1-D squared distance transform (Felzenszwalb & Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
            std::vector<double>& z, int n) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s;
    while (true) {
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
      if (s <= z[k]) --k;
      else break;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    d[q] = (q - v[k]) * (q - v[k]) + f[v[k]];
  }
}

}  // namespace

DistanceField::DistanceField(const OccupancyGrid& grid)
    : width_(grid.width()), height_(grid.height()), resolution_(grid.resolution()),
      origin_(grid.origin()), dist_(static_cast<std::size_t>(width_) * height_) {
  constexpr double kInf = 1e18;
  std::vector<double> sq(dist_.size());
  for (int iy = 0; iy < height_; ++iy)
    for (int ix = 0; ix < width_; ++ix)
      sq[iy * width_ + ix] = grid.occupied(ix, iy) ? 0.0 : kInf;

  int n = std::max(width_, height_);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);
  // columns
  for (int ix = 0; ix < width_; ++ix) {
    for (int iy = 0; iy < height_; ++iy) f[iy] = sq[iy * width_ + ix];
    edt_1d(f, d, v, z, height_);
    for (int iy = 0; iy < height_; ++iy) sq[iy * width_ + ix] = d[iy];
  }
  // rows
  for (int iy = 0; iy < height_; ++iy) {
    for (int ix = 0; ix < width_; ++ix) f[ix] = sq[iy * width_ + ix];
    edt_1d(f, d, v, z, width_);
    for (int ix = 0; ix < width_; ++ix) dist_[iy * width_ + ix] = std::sqrt(d[ix]) * resolution_;
  }
}

double DistanceField::clearance_cell(int ix, int iy) const {
  if (ix < 0 || ix >= width_ || iy < 0 || iy >= height_) return 0.0;
  return dist_[iy * width_ + ix];
}

double DistanceField::clearance(const Vec2& p) const {
  int ix = static_cast<int>(std::floor((p.x - origin_.x) / resolution_));
  int iy = static_cast<int>(std::floor((p.y - origin_.y) / resolution_));
  return clearance_cell(ix, iy);
}

OccupancyGrid make_playpen_grid() {
  OccupancyGrid g(120, 100, 0.05);
  g.fill_border();
  return g;
}

}  // namespace playpen
