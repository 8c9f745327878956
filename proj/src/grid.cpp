#include "hmk/grid.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hmk {

double euclidean_norm(const Point& x) { return std::hypot(x[0], x[1], x[2]); }

double distance(const Point& x, const Point& y) {
  return std::hypot(x[0] - y[0], x[1] - y[1], x[2] - y[2]);
}

AxisGrid::AxisGrid(std::vector<double> points, std::vector<double> cell_widths)
    : points_(std::move(points)), widths_(std::move(cell_widths)) {
  if (points_.empty()) throw std::invalid_argument("AxisGrid: no points");
  if (points_.size() != widths_.size())
    throw std::invalid_argument("AxisGrid: points/widths length mismatch");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || !(widths_[i] > 0) || !std::isfinite(widths_[i]))
      throw std::invalid_argument("AxisGrid: non-finite point or non-positive width");
    if (i > 0 && !(points_[i] > points_[i - 1]))
      throw std::invalid_argument("AxisGrid: points not strictly increasing");
  }
}

TensorGrid::TensorGrid(std::vector<AxisGrid> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > kMaxDim)
    throw std::invalid_argument("TensorGrid: dimension must be 1, 2 or 3");
  size_ = 1;
  for (const auto& a : axes_) size_ *= a.size();
}

std::array<std::size_t, kMaxDim> TensorGrid::unflatten(std::size_t flat) const {
  std::array<std::size_t, kMaxDim> idx{0, 0, 0};
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    idx[d] = flat % axes_[d].size();
    flat /= axes_[d].size();
  }
  return idx;
}

std::size_t TensorGrid::flatten(const std::array<std::size_t, kMaxDim>& idx) const {
  std::size_t flat = 0;
  for (std::size_t d = axes_.size(); d-- > 0;) flat = flat * axes_[d].size() + idx[d];
  return flat;
}

Point TensorGrid::point(std::size_t flat) const {
  Point x{0.0, 0.0, 0.0};
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    x[d] = axes_[d].point(flat % axes_[d].size());
    flat /= axes_[d].size();
  }
  return x;
}

double TensorGrid::cell_volume(std::size_t flat) const {
  double v = 1.0;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    v *= axes_[d].cell_width(flat % axes_[d].size());
    flat /= axes_[d].size();
  }
  return v;
}

Point TensorGrid::half_widths(std::size_t flat) const {
  Point h{0.0, 0.0, 0.0};
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    h[d] = 0.5 * axes_[d].cell_width(flat % axes_[d].size());
    flat /= axes_[d].size();
  }
  return h;
}

double TensorGrid::smallest_cell_width() const {
  double w = INFINITY;
  for (const auto& a : axes_)
    for (double c : a.cell_widths()) w = std::min(w, c);
  return w;
}

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("GridFunction: null grid");
  if (values_.size() != grid_->size())
    throw std::invalid_argument("GridFunction: value count does not match grid shape");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("GridFunction: non-finite value");
}

GridFunction GridFunction::zeros(GridPtr grid) {
  const auto n = grid->size();
  return GridFunction(std::move(grid), std::vector<double>(n, 0.0));
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return grid_ == other.grid_ || *grid_ == *other.grid_;
}

namespace {

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!f.same_grid(g)) throw std::invalid_argument("grid mismatch");
}

template <typename Op>
GridFunction pointwise(const GridFunction& f, Op op) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = op(i);
  return GridFunction(f.grid_ptr(), std::move(out));
}

}  // namespace

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  return pointwise(f, [&](std::size_t i) { return f[i] + g[i]; });
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  return pointwise(f, [&](std::size_t i) { return f[i] - g[i]; });
}

GridFunction operator*(double c, const GridFunction& f) {
  return pointwise(f, [&](std::size_t i) { return c * f[i]; });
}

GridFunction abs(const GridFunction& f) {
  return pointwise(f, [&](std::size_t i) { return std::fabs(f[i]); });
}

GridFunction sample(const PointFunction& expr, const GridPtr& grid) {
  std::vector<double> out(grid->size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = expr(grid->point(i));
    if (!std::isfinite(out[i]))
      throw std::domain_error("sample: non-finite value at sample " + std::to_string(i));
  }
  return GridFunction(grid, std::move(out));
}

GridFunction restrict(const GridFunction& f, const Mask& mask) {
  if (mask.size() != f.size()) throw std::invalid_argument("restrict: mask shape mismatch");
  return pointwise(f, [&](std::size_t i) { return mask[i] ? f[i] : 0.0; });
}

Mask ball_mask(const TensorGrid& grid, double r) {
  Mask m(grid.size(), false);
  for (std::size_t i = 0; i < grid.size(); ++i) m.set(i, euclidean_norm(grid.point(i)) <= r);
  return m;
}

int annulus_index(double r) {
  // frexp gives r = m * 2^e with m in [0.5, 1), i.e. 2^{e-1} <= r < 2^e.
  int e = 0;
  std::frexp(r, &e);
  return e;
}

DyadicDecomposition::DyadicDecomposition(const TensorGrid& grid, int k_min, int k_max)
    : k_min_(k_min), k_max_(k_max), annulus_(grid.size(), kOutside) {
  if (k_min > k_max) throw std::invalid_argument("DyadicDecomposition: k_min > k_max");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = euclidean_norm(grid.point(i));
    if (r <= 0.0) continue;
    const int k = annulus_index(r);
    if (k >= k_min && k <= k_max) annulus_[i] = k;
  }
}

Mask DyadicDecomposition::mask(int k) const {
  Mask m(annulus_.size(), false);
  for (std::size_t i = 0; i < annulus_.size(); ++i) m.set(i, annulus_[i] == k);
  return m;
}

Mask DyadicDecomposition::support_mask() const {
  Mask m(annulus_.size(), false);
  for (std::size_t i = 0; i < annulus_.size(); ++i) m.set(i, annulus_[i] != kOutside);
  return m;
}

namespace {

constexpr int kMaxOctaveSpan = 40;
constexpr std::size_t kMaxSamples = std::size_t{1} << 26;

AxisGrid dyadic_axis(int k_min, int k_max, int spo) {
  std::vector<double> half_points;
  std::vector<double> half_widths;
  auto add_block = [&](double lo, double width) {
    for (int i = 0; i < spo; ++i) {
      half_points.push_back(lo + (i + 0.5) * width);
      half_widths.push_back(width);
    }
  };
  const double core = std::ldexp(1.0, k_min - 1);
  add_block(0.0, core / spo);
  for (int k = k_min; k <= k_max; ++k) {
    const double lo = std::ldexp(1.0, k - 1);
    add_block(lo, lo / spo);
  }
  std::vector<double> points;
  std::vector<double> widths;
  points.reserve(2 * half_points.size());
  widths.reserve(2 * half_points.size());
  for (std::size_t i = half_points.size(); i-- > 0;) {
    points.push_back(-half_points[i]);
    widths.push_back(half_widths[i]);
  }
  points.insert(points.end(), half_points.begin(), half_points.end());
  widths.insert(widths.end(), half_widths.begin(), half_widths.end());
  return AxisGrid(std::move(points), std::move(widths));
}

}  // namespace

DyadicGrid make_dyadic_grid(int n, int k_min, int k_max, int samples_per_octave) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("make_dyadic_grid: n must be 1, 2 or 3");
  if (k_min > k_max) throw std::invalid_argument("make_dyadic_grid: k_min > k_max");
  if (samples_per_octave < 2)
    throw std::invalid_argument("make_dyadic_grid: samples_per_octave must be >= 2");
  // Keep every cell width resolvable next to the outer radius and stay far
  // from the double exponent range.
  if (k_max - k_min > kMaxOctaveSpan || k_min < -900 || k_max > 900)
    throw std::invalid_argument("make_dyadic_grid: 2^k_min underflows the grid resolution");
  const std::size_t axis_len =
      2 * static_cast<std::size_t>(samples_per_octave) * static_cast<std::size_t>(k_max - k_min + 2);
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) {
    total *= axis_len;
    if (total > kMaxSamples) throw std::invalid_argument("make_dyadic_grid: grid too large");
  }

  std::vector<AxisGrid> axes(static_cast<std::size_t>(n),
                             dyadic_axis(k_min, k_max, samples_per_octave));
  auto grid = std::make_shared<const TensorGrid>(std::move(axes));
  DyadicDecomposition decomp(*grid, k_min, k_max);

  std::size_t required = 1;
  for (int d = 0; d < n; ++d) required *= static_cast<std::size_t>(samples_per_octave);
  std::vector<std::size_t> per_k(static_cast<std::size_t>(decomp.count()), 0);
  for (int k : decomp.annulus_indices())
    if (k != DyadicDecomposition::kOutside) ++per_k[static_cast<std::size_t>(k - k_min)];
  for (std::size_t c : per_k)
    if (c < required) throw std::logic_error("make_dyadic_grid: annulus under-resolved");

  return DyadicGrid{std::move(grid), std::move(decomp), samples_per_octave};
}

}  // namespace hmk
