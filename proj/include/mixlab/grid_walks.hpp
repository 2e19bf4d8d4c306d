#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mixlab/kernel.hpp"

namespace mixlab {

/// Lattice points of a region, materialized as an indexed point list.
/// Validates distinctness and connectivity under unit steps.
class LatticeRegion {
 public:
  using Point = std::vector<int>;

  LatticeRegion(int dimension, std::vector<Point> points);

  /// Materializes the predicate over an axis-aligned bounding box.
  static LatticeRegion from_predicate(int dimension, const std::vector<int>& lo,
                                      const std::vector<int>& hi,
                                      const std::function<bool(const Point&)>& inside);

  /// 2-D disc {x^2 + y^2 <= radius^2}.
  static LatticeRegion disc(double radius);

  /// 1-D segment {1..n}, for comparison with the path walk.
  static LatticeRegion segment(int n);

  int dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }

  /// Index of a point, or -1 if outside the region.
  std::int64_t index_of(const Point& p) const;

 private:
  int dimension_;
  std::vector<Point> points_;
  std::vector<std::size_t> order_;  // indices sorting points_ lexicographically
};

/// Simple random walk on an n-point path with 1/2 holding at both ends.
/// Doubly stochastic; uniform stationary distribution.
Kernel path_kernel(std::size_t n);

/// Nearest-neighbor walk inside the region: each of the 2d unit steps with
/// probability 1/(2d), off-region proposals hold. Uniform stationary.
Kernel lattice_kernel(const LatticeRegion& region);

/// All non-negative integer tables with the given row and column sums,
/// enumerated and indexed.
class TableSpace {
 public:
  TableSpace(std::vector<int> row_sums, std::vector<int> col_sums,
             std::size_t cap = 200000);

  const std::vector<int>& row_sums() const { return row_sums_; }
  const std::vector<int>& col_sums() const { return col_sums_; }
  std::size_t rows() const { return row_sums_.size(); }
  std::size_t cols() const { return col_sums_.size(); }
  std::size_t size() const { return tables_.size(); }

  /// Table t, flattened row-major.
  const std::vector<int>& table(std::size_t t) const { return tables_[t]; }
  std::int64_t index_of(const std::vector<int>& table) const;

 private:
  std::vector<int> row_sums_;
  std::vector<int> col_sums_;
  std::vector<std::vector<int>> tables_;
  std::vector<std::size_t> order_;
};

/// Swap chain over a table space: pick a row pair, a column pair, and one of
/// the two +/- checkerboard patterns uniformly; apply it if the table stays
/// non-negative, else hold. Uniform stationary over the space.
Kernel table_kernel(const TableSpace& ts);

TableSpace table_space(std::vector<int> row_sums, std::vector<int> col_sums,
                       std::size_t cap = 200000);

}  // namespace mixlab
