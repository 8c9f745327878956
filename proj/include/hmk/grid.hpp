#pragma once

/// \file
/// Sampled functions on axis-aligned tensor grids over R^n (n <= 3), together
/// with the dyadic annulus decomposition A_k = {2^{k-1} <= |x| < 2^k}.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

namespace hmk {

inline constexpr int kMaxDim = 3;

/// Coordinates of a point in R^n. Components past the grid dimension are zero,
/// so Euclidean norms and distances need no dimension argument.
using Point = std::array<double, kMaxDim>;

double euclidean_norm(const Point& x);
double distance(const Point& x, const Point& y);

/// One axis of a midpoint-rule tensor grid: strictly increasing cell centers
/// and a positive width per cell.
class AxisGrid {
 public:
  AxisGrid(std::vector<double> points, std::vector<double> cell_widths);

  std::size_t size() const { return points_.size(); }
  std::span<const double> points() const { return points_; }
  std::span<const double> cell_widths() const { return widths_; }
  double point(std::size_t i) const { return points_[i]; }
  double cell_width(std::size_t i) const { return widths_[i]; }

  /// Lower and upper edge of the covered interval.
  double lower() const { return points_.front() - 0.5 * widths_.front(); }
  double upper() const { return points_.back() + 0.5 * widths_.back(); }

  bool operator==(const AxisGrid&) const = default;

 private:
  std::vector<double> points_;
  std::vector<double> widths_;
};

/// Tensor product of 1..3 axes. Samples are stored with x_1 varying fastest.
class TensorGrid {
 public:
  explicit TensorGrid(std::vector<AxisGrid> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  std::size_t size() const { return size_; }
  const AxisGrid& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  std::span<const AxisGrid> axes() const { return axes_; }

  /// Per-axis indices of the flat sample index.
  std::array<std::size_t, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, kMaxDim>& idx) const;

  Point point(std::size_t flat) const;
  double cell_volume(std::size_t flat) const;
  /// Half-widths of the cell around sample `flat` (zero past dim()).
  Point half_widths(std::size_t flat) const;
  double smallest_cell_width() const;

  bool operator==(const TensorGrid& other) const { return axes_ == other.axes_; }

 private:
  std::vector<AxisGrid> axes_;
  std::size_t size_ = 0;
};

using GridPtr = std::shared_ptr<const TensorGrid>;

/// Per-sample indicator over a TensorGrid.
class Mask {
 public:
  Mask() = default;
  Mask(std::size_t size, bool value) : bits_(size, value ? 1 : 0) {}
  explicit Mask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  std::size_t count() const;

  bool operator==(const Mask&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Real values sampled on a TensorGrid. Immutable after construction.
class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<double> values);
  /// The zero function on `grid`.
  static GridFunction zeros(GridPtr grid);

  const TensorGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int dim() const { return grid_->dim(); }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool is_zero() const;
  bool same_grid(const GridFunction& other) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(double c, const GridFunction& f);
GridFunction abs(const GridFunction& f);

using PointFunction = std::function<double(const Point&)>;

/// Evaluates `expr` at every sample of `grid`. Throws std::domain_error on a
/// non-finite sample.
GridFunction sample(const PointFunction& expr, const GridPtr& grid);

/// f at masked samples, 0 elsewhere.
GridFunction restrict(const GridFunction& f, const Mask& mask);

/// Samples with |x| <= r.
Mask ball_mask(const TensorGrid& grid, double r);

/// Annulus membership of every sample of one grid, k in [k_min, k_max].
class DyadicDecomposition {
 public:
  static constexpr int kOutside = std::numeric_limits<int>::min();

  DyadicDecomposition(const TensorGrid& grid, int k_min, int k_max);

  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  int count() const { return k_max_ - k_min_ + 1; }

  /// Annulus index of sample i, or kOutside.
  int annulus_of(std::size_t i) const { return annulus_[i]; }
  std::span<const int> annulus_indices() const { return annulus_; }

  Mask mask(int k) const;
  /// Union of all annulus masks.
  Mask support_mask() const;
  std::size_t size() const { return annulus_.size(); }

 private:
  int k_min_;
  int k_max_;
  std::vector<int> annulus_;
};

/// Index of the dyadic annulus containing a point at distance r from the
/// origin, i.e. the k with 2^{k-1} <= r < 2^k.
int annulus_index(double r);

struct DyadicGrid {
  GridPtr grid;
  DyadicDecomposition decomposition;
  int samples_per_octave;
};

/// Symmetric grid covering [-2^{k_max}, 2^{k_max}]^n. Each half-axis has
/// `samples_per_octave` uniform cells per octave [2^{k-1}, 2^k), k_min <= k <=
/// k_max, plus the same number of cells on the core [0, 2^{k_min-1}). The
/// origin is never a sample.
DyadicGrid make_dyadic_grid(int n, int k_min, int k_max, int samples_per_octave);

}  // namespace hmk
