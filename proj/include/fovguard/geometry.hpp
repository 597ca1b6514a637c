#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fovguard {

inline constexpr double kPi = std::numbers::pi;

/// Head orientation on the unit sphere, equirectangular convention.
/// yaw in [-pi, pi), pitch in [-pi/2, pi/2], timestamp in seconds.
struct Viewpoint {
  double yaw = 0.0;
  double pitch = 0.0;
  double t = 0.0;
};

/// Wraps an angle into [-pi, pi).
inline double wrap_yaw(double yaw) {
  double w = std::fmod(yaw + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

/// Rectangular tiling of the equirectangular panorama.
/// Tiles are numbered 1..M row-major, top-left first.
struct TileGrid {
  int rows = 1;
  int cols = 1;

  TileGrid() = default;
  TileGrid(int r, int c) : rows(r), cols(c) {
    if (r < 1 || c < 1) throw std::invalid_argument("TileGrid: rows and cols must be >= 1");
  }

  int tile_count() const { return rows * cols; }

  int row_of(int index) const { return (index - 1) / cols + 1; }
  int col_of(int index) const { return (index - 1) % cols + 1; }
  int index_of(int row, int col) const { return (row - 1) * cols + col; }

  bool operator==(const TileGrid&) const = default;
};

/// Subset of a grid's tiles as a fixed-length bit vector.
class TileSet {
 public:
  TileSet() = default;
  explicit TileSet(const TileGrid& grid) : grid_(grid), bits_(static_cast<size_t>(grid.tile_count()), false) {}

  const TileGrid& grid() const { return grid_; }

  bool contains(int index) const {
    check_index(index);
    return bits_[static_cast<size_t>(index - 1)];
  }
  void add(int index) {
    check_index(index);
    bits_[static_cast<size_t>(index - 1)] = true;
  }
  void remove(int index) {
    check_index(index);
    bits_[static_cast<size_t>(index - 1)] = false;
  }

  int cardinality() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), true)); }
  bool empty() const { return cardinality() == 0; }

  /// Set tile indices in ascending order.
  std::vector<int> indices() const {
    std::vector<int> out;
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(static_cast<int>(i) + 1);
    return out;
  }

  TileSet operator|(const TileSet& o) const {
    TileSet r = *this;
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] || o.bits_[i];
    return r;
  }
  TileSet operator&(const TileSet& o) const {
    TileSet r = *this;
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] && o.bits_[i];
    return r;
  }
  TileSet operator-(const TileSet& o) const {
    TileSet r = *this;
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] && !o.bits_[i];
    return r;
  }
  bool is_subset_of(const TileSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !o.bits_[i]) return false;
    return true;
  }
  bool is_disjoint_from(const TileSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && o.bits_[i]) return false;
    return true;
  }
  int overlap(const TileSet& o) const { return (*this & o).cardinality(); }

  bool operator==(const TileSet&) const = default;

 private:
  void check_index(int index) const {
    if (index < 1 || index > grid_.tile_count()) throw std::out_of_range("TileSet: tile index out of range");
  }

  TileGrid grid_;
  std::vector<bool> bits_;
};

/// Center of a tile in angular coordinates.
inline Viewpoint tile_center(const TileGrid& grid, int index) {
  if (index < 1 || index > grid.tile_count()) throw std::out_of_range("tile_center: index out of range");
  const int row = grid.row_of(index);
  const int col = grid.col_of(index);
  Viewpoint vp;
  vp.yaw = -kPi + (col - 0.5) * (2.0 * kPi / grid.cols);
  vp.pitch = kPi / 2.0 - (row - 0.5) * (kPi / grid.rows);
  return vp;
}

/// Great-circle central angle between two viewpoints, in [0, pi].
inline double angular_distance(const Viewpoint& a, const Viewpoint& b) {
  // Spherical law of cosines, clamped against rounding.
  const double c = std::sin(a.pitch) * std::sin(b.pitch) +
                   std::cos(a.pitch) * std::cos(b.pitch) * std::cos(a.yaw - b.yaw);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Tile whose rectangle contains the viewpoint.
inline int containing_tile(const TileGrid& grid, const Viewpoint& vp) {
  int col = static_cast<int>(std::floor((wrap_yaw(vp.yaw) + kPi) / (2.0 * kPi / grid.cols))) + 1;
  int row = static_cast<int>(std::floor((kPi / 2.0 - vp.pitch) / (kPi / grid.rows))) + 1;
  col = std::clamp(col, 1, grid.cols);
  row = std::clamp(row, 1, grid.rows);
  return grid.index_of(row, col);
}

/// The n tiles whose centers are nearest the viewpoint.
/// Ties broken by ascending tile index.
inline TileSet top_n_tiles(const TileGrid& grid, const Viewpoint& vp, int n) {
  const int m = grid.tile_count();
  if (n < 1 || n > m) throw std::out_of_range("top_n_tiles: n out of range");
  std::vector<std::pair<double, int>> dist;
  dist.reserve(static_cast<size_t>(m));
  for (int i = 1; i <= m; ++i) dist.emplace_back(angular_distance(tile_center(grid, i), vp), i);
  std::stable_sort(dist.begin(), dist.end());
  TileSet out(grid);
  for (int i = 0; i < n; ++i) out.add(dist[static_cast<size_t>(i)].second);
  return out;
}

/// Tiles whose center lies within fov_diameter/2 of the viewpoint.
/// The containing tile is always included, so the set is never empty.
inline TileSet fov_tiles(const TileGrid& grid, const Viewpoint& vp, double fov_diameter_deg) {
  if (fov_diameter_deg < 0.0 || fov_diameter_deg > 360.0)
    throw std::invalid_argument("fov_tiles: diameter must be in [0, 360] degrees");
  const double radius = fov_diameter_deg * kPi / 180.0 / 2.0;
  TileSet out(grid);
  for (int i = 1; i <= grid.tile_count(); ++i)
    if (angular_distance(tile_center(grid, i), vp) <= radius) out.add(i);
  out.add(containing_tile(grid, vp));
  return out;
}

namespace detail {

/// All 8-neighbors of the region not yet in it.
/// Columns wrap around in yaw; rows clamp at the poles.
inline TileSet neighbor_ring(const TileGrid& grid, const TileSet& region) {
  TileSet ring(grid);
  for (int idx : region.indices()) {
    const int row = grid.row_of(idx);
    const int col = grid.col_of(idx);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const int nr = row + dr;
        if (nr < 1 || nr > grid.rows) continue;
        int nc = (col - 1 + dc + grid.cols) % grid.cols + 1;
        const int nidx = grid.index_of(nr, nc);
        if (!region.contains(nidx)) ring.add(nidx);
      }
    }
  }
  return ring;
}

}  // namespace detail

/// Grows a camouflage set around the seed by successive 8-neighbor rings.
/// Whole rings are taken while they fit; the final partial ring is filled
/// in ascending tile-index order. Output is disjoint from the seed.
inline TileSet ring_expand(const TileGrid& grid, const TileSet& seed, int count) {
  if (count < 0 || count > grid.tile_count() - seed.cardinality())
    throw std::invalid_argument("ring_expand: count exceeds available tiles");
  TileSet out(grid);
  if (count == 0) return out;
  if (seed.empty()) throw std::invalid_argument("ring_expand: seed must be non-empty when count > 0");

  TileSet region = seed;
  int remaining = count;
  while (remaining > 0) {
    const TileSet ring = detail::neighbor_ring(grid, region);
    const int ring_size = ring.cardinality();
    if (ring_size == 0) throw std::logic_error("ring_expand: region exhausted before count reached");
    if (ring_size <= remaining) {
      out = out | ring;
      region = region | ring;
      remaining -= ring_size;
    } else {
      for (int idx : ring.indices()) {
        if (remaining == 0) break;
        out.add(idx);
        --remaining;
      }
    }
  }
  return out;
}

}  // namespace fovguard
