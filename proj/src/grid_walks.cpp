#include "mixlab/grid_walks.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace mixlab {

namespace {

std::vector<std::size_t> lexicographic_order(const std::vector<std::vector<int>>& items) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return items[a] < items[b]; });
  return order;
}

std::int64_t lookup(const std::vector<std::vector<int>>& items,
                    const std::vector<std::size_t>& order, const std::vector<int>& key) {
  auto it = std::lower_bound(order.begin(), order.end(), key,
                             [&](std::size_t a, const std::vector<int>& k) {
                               return items[a] < k;
                             });
  if (it == order.end() || items[*it] != key) return -1;
  return static_cast<std::int64_t>(*it);
}

}  // namespace

LatticeRegion::LatticeRegion(int dimension, std::vector<Point> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension_ < 1) throw std::invalid_argument("dimension must be >= 1");
  if (points_.empty()) throw std::invalid_argument("empty region");
  for (const auto& p : points_) {
    if (static_cast<int>(p.size()) != dimension_) {
      throw std::invalid_argument("point dimension mismatch");
    }
  }
  order_ = lexicographic_order(points_);
  for (std::size_t i = 1; i < order_.size(); ++i) {
    if (points_[order_[i - 1]] == points_[order_[i]]) {
      throw std::invalid_argument("duplicate point in region");
    }
  }

  // Connectivity under unit steps, by breadth-first search.
  std::vector<char> seen(points_.size(), 0);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto at = frontier.front();
    frontier.pop();
    Point p = points_[at];
    for (int axis = 0; axis < dimension_; ++axis) {
      for (int delta : {-1, +1}) {
        p[axis] += delta;
        const std::int64_t j = index_of(p);
        p[axis] -= delta;
        if (j >= 0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = 1;
          ++reached;
          frontier.push(static_cast<std::size_t>(j));
        }
      }
    }
  }
  if (reached != points_.size()) {
    throw std::invalid_argument("region is not connected under unit steps");
  }
}

LatticeRegion LatticeRegion::from_predicate(int dimension, const std::vector<int>& lo,
                                            const std::vector<int>& hi,
                                            const std::function<bool(const Point&)>& inside) {
  if (static_cast<int>(lo.size()) != dimension || static_cast<int>(hi.size()) != dimension) {
    throw std::invalid_argument("bounding box dimension mismatch");
  }
  std::vector<Point> points;
  Point p(lo.begin(), lo.end());
  for (;;) {
    if (inside(p)) points.push_back(p);
    int axis = 0;
    while (axis < dimension) {
      if (++p[axis] <= hi[axis]) break;
      p[axis] = lo[axis];
      ++axis;
    }
    if (axis == dimension) break;
  }
  return LatticeRegion(dimension, std::move(points));
}

LatticeRegion LatticeRegion::disc(double radius) {
  const int r = static_cast<int>(std::floor(radius));
  const double r2 = radius * radius;
  return from_predicate(2, {-r, -r}, {r, r}, [r2](const Point& p) {
    return static_cast<double>(p[0]) * p[0] + static_cast<double>(p[1]) * p[1] <= r2;
  });
}

LatticeRegion LatticeRegion::segment(int n) {
  if (n < 1) throw std::invalid_argument("segment needs at least one point");
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) points.push_back({i});
  return LatticeRegion(1, std::move(points));
}

std::int64_t LatticeRegion::index_of(const Point& p) const {
  return lookup(points_, order_, p);
}

Kernel path_kernel(std::size_t n) {
  if (n < 2) throw std::invalid_argument("path walk needs at least 2 states");
  std::vector<std::vector<KernelEntry>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      rows[i] = {{0, 0.5}, {1, 0.5}};
    } else if (i + 1 == n) {
      rows[i] = {{static_cast<std::uint32_t>(n - 1), 0.5},
                 {static_cast<std::uint32_t>(n - 2), 0.5}};
    } else {
      rows[i] = {{static_cast<std::uint32_t>(i - 1), 0.5},
                 {static_cast<std::uint32_t>(i + 1), 0.5}};
    }
  }
  return Kernel(n, std::move(rows), "path-" + std::to_string(n));
}

Kernel lattice_kernel(const LatticeRegion& region) {
  const int d = region.dimension();
  const double step = 1.0 / (2.0 * d);
  std::vector<std::vector<KernelEntry>> rows(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) {
    LatticeRegion::Point p = region.points()[i];
    double hold = 0.0;
    for (int axis = 0; axis < d; ++axis) {
      for (int delta : {-1, +1}) {
        p[axis] += delta;
        const std::int64_t j = region.index_of(p);
        p[axis] -= delta;
        if (j >= 0) {
          rows[i].push_back({static_cast<std::uint32_t>(j), step});
        } else {
          hold += step;
        }
      }
    }
    if (hold > 0.0) rows[i].push_back({static_cast<std::uint32_t>(i), hold});
  }
  return Kernel(region.size(), std::move(rows),
                "lattice-" + std::to_string(d) + "d-" + std::to_string(region.size()));
}

TableSpace::TableSpace(std::vector<int> row_sums, std::vector<int> col_sums, std::size_t cap)
    : row_sums_(std::move(row_sums)), col_sums_(std::move(col_sums)) {
  if (row_sums_.empty() || col_sums_.empty()) {
    throw std::invalid_argument("margins must be non-empty");
  }
  long long total_r = 0;
  long long total_c = 0;
  for (int r : row_sums_) {
    if (r <= 0) throw std::invalid_argument("row sums must be positive");
    total_r += r;
  }
  for (int c : col_sums_) {
    if (c <= 0) throw std::invalid_argument("column sums must be positive");
    total_c += c;
  }
  if (total_r != total_c) {
    throw std::invalid_argument("row and column sums must have equal totals");
  }

  // Recursive cell-by-cell fill with margin feasibility pruning.
  const std::size_t nr = row_sums_.size();
  const std::size_t nc = col_sums_.size();
  std::vector<int> table(nr * nc, 0);
  std::vector<int> col_left(col_sums_);
  std::function<void(std::size_t, std::size_t, int)> fill =
      [&](std::size_t r, std::size_t c, int row_left) {
        if (c + 1 == nc) {
          // Last column of the row is forced.
          if (row_left > col_left[c]) return;
          table[r * nc + c] = row_left;
          col_left[c] -= row_left;
          if (r + 1 == nr) {
            bool exact = true;
            for (int rem : col_left) exact = exact && rem == 0;
            if (exact) {
              if (tables_.size() >= cap) {
                throw std::length_error("table space exceeds enumeration cap of " +
                                        std::to_string(cap));
              }
              tables_.push_back(table);
            }
          } else {
            fill(r + 1, 0, row_sums_[r + 1]);
          }
          col_left[c] += row_left;
          table[r * nc + c] = 0;
          return;
        }
        const int max_here = std::min(row_left, col_left[c]);
        for (int v = 0; v <= max_here; ++v) {
          table[r * nc + c] = v;
          col_left[c] -= v;
          fill(r, c + 1, row_left - v);
          col_left[c] += v;
          table[r * nc + c] = 0;
        }
      };
  fill(0, 0, row_sums_[0]);

  if (tables_.empty()) throw std::invalid_argument("no tables satisfy the margins");
  order_ = lexicographic_order(tables_);
}

std::int64_t TableSpace::index_of(const std::vector<int>& table) const {
  return lookup(tables_, order_, table);
}

TableSpace table_space(std::vector<int> row_sums, std::vector<int> col_sums, std::size_t cap) {
  return TableSpace(std::move(row_sums), std::move(col_sums), cap);
}

Kernel table_kernel(const TableSpace& ts) {
  const std::size_t nr = ts.rows();
  const std::size_t nc = ts.cols();
  if (nr < 2 || nc < 2) {
    throw std::invalid_argument("swap chain needs at least two rows and two columns");
  }
  const double move_prob =
      1.0 / (static_cast<double>(nr * (nr - 1) / 2) * static_cast<double>(nc * (nc - 1) / 2) * 2.0);

  std::vector<std::vector<KernelEntry>> rows(ts.size());
  std::vector<int> scratch;
  for (std::size_t t = 0; t < ts.size(); ++t) {
    double hold = 0.0;
    for (std::size_t r1 = 0; r1 < nr; ++r1) {
      for (std::size_t r2 = r1 + 1; r2 < nr; ++r2) {
        for (std::size_t c1 = 0; c1 < nc; ++c1) {
          for (std::size_t c2 = c1 + 1; c2 < nc; ++c2) {
            for (int sign : {+1, -1}) {
              scratch = ts.table(t);
              scratch[r1 * nc + c1] += sign;
              scratch[r1 * nc + c2] -= sign;
              scratch[r2 * nc + c1] -= sign;
              scratch[r2 * nc + c2] += sign;
              const bool ok = scratch[r1 * nc + c1] >= 0 && scratch[r1 * nc + c2] >= 0 &&
                              scratch[r2 * nc + c1] >= 0 && scratch[r2 * nc + c2] >= 0;
              if (!ok) {
                hold += move_prob;
                continue;
              }
              const std::int64_t j = ts.index_of(scratch);
              if (j < 0) throw std::logic_error("swap move left the enumerated space");
              rows[t].push_back({static_cast<std::uint32_t>(j), move_prob});
            }
          }
        }
      }
    }
    if (hold > 0.0) rows[t].push_back({static_cast<std::uint32_t>(t), hold});
  }
  return Kernel(ts.size(), std::move(rows),
                "tables-" + std::to_string(nr) + "x" + std::to_string(nc));
}

}  // namespace mixlab
