#include "hmk/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hmk/parallel.hpp"

namespace hmk {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::HLMaximal: return "hl_maximal";
    case OperatorKind::FractionalMaximal: return "fractional_maximal";
    case OperatorKind::RieszPotential: return "riesz_potential";
    case OperatorKind::CommutatorMb: return "commutator_mb";
    case OperatorKind::CommutatorMbl: return "commutator_mbl";
  }
  return "unknown";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view name) {
  if (name == "hl_maximal" || name == "hl") return OperatorKind::HLMaximal;
  if (name == "fractional_maximal" || name == "fractional") return OperatorKind::FractionalMaximal;
  if (name == "riesz_potential" || name == "riesz") return OperatorKind::RieszPotential;
  if (name == "commutator_mb" || name == "mb") return OperatorKind::CommutatorMb;
  if (name == "commutator_mbl" || name == "mbl") return OperatorKind::CommutatorMbl;
  return std::nullopt;
}

double BmoSymbol::at(const Point& x) const {
  if (!pointwise) throw std::invalid_argument("BMO symbol has no pointwise form for off-grid evaluation");
  return pointwise(x);
}

std::shared_ptr<const BmoSymbol> log_symbol(const GridPtr& grid) {
  PointFunction expr = [](const Point& x) { return std::log(euclidean_norm(x)); };
  auto b = sample(expr, grid);
  const auto family = origin_cube_family(*grid, 4);
  const double est = bmo_seminorm(b, family);
  return std::make_shared<const BmoSymbol>(BmoSymbol{std::move(b), std::move(expr), est});
}

OperatorSpec OperatorSpec::hl_maximal(std::vector<double> radii) {
  return OperatorSpec{OperatorKind::HLMaximal, 0.0, nullptr, std::move(radii)};
}

OperatorSpec OperatorSpec::fractional_maximal(double l, std::vector<double> radii) {
  return OperatorSpec{OperatorKind::FractionalMaximal, l, nullptr, std::move(radii)};
}

OperatorSpec OperatorSpec::riesz_potential(double l) {
  return OperatorSpec{OperatorKind::RieszPotential, l, nullptr, {}};
}

OperatorSpec OperatorSpec::commutator_mb(std::shared_ptr<const BmoSymbol> b, std::vector<double> radii) {
  return OperatorSpec{OperatorKind::CommutatorMb, 0.0, std::move(b), std::move(radii)};
}

OperatorSpec OperatorSpec::commutator_mbl(double l, std::shared_ptr<const BmoSymbol> b, std::vector<double> radii) {
  return OperatorSpec{OperatorKind::CommutatorMbl, l, std::move(b), std::move(radii)};
}

void OperatorSpec::validate(int n) const {
  switch (kind) {
    case OperatorKind::FractionalMaximal:
      if (!(l >= 0.0 && l < n)) throw std::invalid_argument("fractional maximal: l must lie in [0, n)");
      break;
    case OperatorKind::RieszPotential:
      if (!(l > 0.0 && l < n)) throw std::invalid_argument("riesz potential: l must lie in (0, n)");
      break;
    case OperatorKind::CommutatorMbl:
      if (!(l > 1.0) || !std::isfinite(l)) throw std::invalid_argument("commutator M_b^l: l must exceed 1");
      [[fallthrough]];
    case OperatorKind::CommutatorMb:
      if (!symbol) throw std::invalid_argument("commutator: missing BMO symbol");
      break;
    case OperatorKind::HLMaximal:
      break;
  }
  if (is_maximal_type() && radius_set.empty()) throw std::invalid_argument("maximal operator: empty radius set");
}

double OperatorSpec::decay_order(int n) const {
  switch (kind) {
    case OperatorKind::FractionalMaximal:
    case OperatorKind::RieszPotential: return l;
    case OperatorKind::CommutatorMbl: return n / l;
    default: return 0.0;
  }
}

double ball_volume(int n, double r) {
  switch (n) {
    case 1: return 2.0 * r;
    case 2: return std::numbers::pi * r * r;
    case 3: return 4.0 / 3.0 * std::numbers::pi * r * r * r;
    default: throw std::invalid_argument("ball_volume: n must be 1, 2 or 3");
  }
}

std::vector<double> default_radius_set(const TensorGrid& grid, int per_octave) {
  if (per_octave < 1) throw std::invalid_argument("default_radius_set: per_octave must be >= 1");
  const double r_min = 0.5 * grid.smallest_cell_width();
  double extent = 0.0;
  for (const auto& a : grid.axes()) extent = std::max(extent, a.upper() - a.lower());
  const double r_max = extent * std::sqrt(static_cast<double>(grid.dim()));
  const auto m_lo = static_cast<int>(std::floor(per_octave * std::log2(r_min)));
  const auto m_hi = static_cast<int>(std::ceil(per_octave * std::log2(r_max)));
  std::vector<double> radii;
  for (int m = m_lo; m <= m_hi; ++m) radii.push_back(std::exp2(static_cast<double>(m) / per_octave));
  return radii;
}

namespace {

struct SourceCell {
  std::size_t index;
  Point y;
  double mass;  // |f(y)| * cell volume
};

std::vector<SourceCell> support_cells(const GridFunction& f) {
  std::vector<SourceCell> out;
  const auto& g = f.grid();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) out.push_back({i, g.point(i), std::fabs(f[i]) * g.cell_volume(i)});
  return out;
}

std::vector<double> sorted_radii(std::span<const double> radius_set) {
  if (radius_set.empty()) throw std::invalid_argument("maximal operator: empty radius set");
  std::vector<double> r(radius_set.begin(), radius_set.end());
  for (double v : r)
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("maximal operator: radii must be positive");
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

/// max over r of |B(x,r')|^{-exponent} * sum_{|y - x| <= r'} weight(y) * mass(y)
/// with r' = max(r, floor). Masses are binned by the smallest radius whose ball
/// holds the cell center, then accumulated outward.
template <typename Weight>
double maximal_value(const Point& x, std::span<const SourceCell> cells, std::span<const double> radii,
                     double floor, int n, double exponent, Weight weight) {
  std::vector<double> bins(radii.size(), 0.0);
  double floor_acc = 0.0;
  for (const auto& c : cells) {
    const double d = distance(x, c.y);
    if (d <= floor) floor_acc += weight(c) * c.mass;
    const auto it = std::lower_bound(radii.begin(), radii.end(), d);
    if (it == radii.end()) continue;
    bins[static_cast<std::size_t>(it - radii.begin())] += weight(c) * c.mass;
  }
  double best = 0.0;
  if (radii.front() < floor && floor_acc > 0.0) best = floor_acc / std::pow(ball_volume(n, floor), exponent);
  double acc = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    acc += bins[i];
    if (radii[i] >= floor && acc > 0.0) best = std::max(best, acc / std::pow(ball_volume(n, radii[i]), exponent));
  }
  return best;
}

// Radius of the ball with the volume of a cell of volume `cell_volume`. Smaller
// balls hold less than one cell, which the grid does not resolve, so smaller
// radii are raised to it.
double resolution_floor(int n, double cell_volume) {
  return n == 1 ? 0.5 * cell_volume : std::pow(cell_volume / ball_volume(n, 1.0), 1.0 / n);
}

// Floor at an arbitrary point: that of the cell containing x, 0 off the grid.
double resolution_floor(const TensorGrid& g, const Point& x) {
  double volume = 1.0;
  for (int d = 0; d < g.dim(); ++d) {
    const auto& axis = g.axis(d);
    const double v = x[static_cast<std::size_t>(d)];
    if (v < axis.lower() || v >= axis.upper()) return 0.0;
    // First cell whose upper edge lies past v.
    std::size_t lo = 0, hi = axis.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (axis.point(mid) + 0.5 * axis.cell_width(mid) <= v)
        lo = mid + 1;
      else
        hi = mid;
    }
    volume *= axis.cell_width(lo);
  }
  return resolution_floor(g.dim(), volume);
}

struct Unweighted {
  double operator()(const SourceCell&) const { return 1.0; }
};

GridFunction maximal_on_grid(const GridFunction& f, std::span<const double> radius_set, double exponent,
                             const BmoSymbol* symbol) {
  if (symbol && !symbol->b.same_grid(f)) throw std::invalid_argument("commutator: symbol grid mismatch");
  const auto radii = sorted_radii(radius_set);
  const auto cells = support_cells(f);
  const int n = f.dim();
  std::vector<double> out(f.size(), 0.0);
  if (!cells.empty()) {
    const auto& g = f.grid();
    parallel_for(f.size(), [&](std::size_t i) {
      const Point x = g.point(i);
      const double floor = resolution_floor(n, g.cell_volume(i));
      if (symbol) {
        const auto& b = symbol->b;
        const double bx = b[i];
        out[i] = maximal_value(x, cells, radii, floor, n, exponent,
                               [&](const SourceCell& c) { return std::fabs(bx - b[c.index]); });
      } else {
        out[i] = maximal_value(x, cells, radii, floor, n, exponent, Unweighted{});
      }
    });
  }
  return GridFunction(f.grid_ptr(), std::move(out));
}

double maximal_at_point(const GridFunction& f, const Point& x, std::span<const double> radius_set,
                        double exponent, const BmoSymbol* symbol) {
  if (symbol && !symbol->b.same_grid(f)) throw std::invalid_argument("commutator: symbol grid mismatch");
  const auto radii = sorted_radii(radius_set);
  const auto cells = support_cells(f);
  if (cells.empty()) return 0.0;
  const double floor = resolution_floor(f.grid(), x);
  if (symbol) {
    const double bx = symbol->at(x);
    const auto& b = symbol->b;
    return maximal_value(x, cells, radii, floor, f.dim(), exponent,
                         [&](const SourceCell& c) { return std::fabs(bx - b[c.index]); });
  }
  return maximal_value(x, cells, radii, floor, f.dim(), exponent, Unweighted{});
}

void check_fractional(const GridFunction& f, double l) {
  if (!(l >= 0.0 && l < f.dim())) throw std::invalid_argument("fractional maximal: l must lie in [0, n)");
}

void check_riesz(const GridFunction& f, double l) {
  if (!(l > 0.0 && l < f.dim())) throw std::invalid_argument("riesz potential: l must lie in (0, n)");
}

double mbl_exponent(double l) {
  if (!(l > 1.0) || !std::isfinite(l)) throw std::invalid_argument("commutator M_b^l: l must exceed 1");
  return 1.0 - 1.0 / l;  // 1/l'
}

}  // namespace

GridFunction hl_maximal(const GridFunction& f, std::span<const double> radius_set) {
  return maximal_on_grid(f, radius_set, 1.0, nullptr);
}

double hl_maximal_at(const GridFunction& f, const Point& x, std::span<const double> radius_set) {
  return maximal_at_point(f, x, radius_set, 1.0, nullptr);
}

GridFunction fractional_maximal(const GridFunction& f, double l, std::span<const double> radius_set) {
  check_fractional(f, l);
  return maximal_on_grid(f, radius_set, 1.0 - l / f.dim(), nullptr);
}

double fractional_maximal_at(const GridFunction& f, double l, const Point& x, std::span<const double> radius_set) {
  check_fractional(f, l);
  return maximal_at_point(f, x, radius_set, 1.0 - l / f.dim(), nullptr);
}

GridFunction commutator_mb(const GridFunction& f, const BmoSymbol& b, std::span<const double> radius_set) {
  return maximal_on_grid(f, radius_set, 1.0, &b);
}

double commutator_mb_at(const GridFunction& f, const BmoSymbol& b, const Point& x,
                        std::span<const double> radius_set) {
  return maximal_at_point(f, x, radius_set, 1.0, &b);
}

GridFunction commutator_mbl(const GridFunction& f, const BmoSymbol& b, double l,
                            std::span<const double> radius_set) {
  return maximal_on_grid(f, radius_set, mbl_exponent(l), &b);
}

double commutator_mbl_at(const GridFunction& f, const BmoSymbol& b, double l, const Point& x,
                         std::span<const double> radius_set) {
  return maximal_at_point(f, x, radius_set, mbl_exponent(l), &b);
}

double riesz_cell_integral(int n, double l, const Point& x, const Point& center, const Point& h) {
  if (n == 1) {
    const double left = h[0] + (x[0] - center[0]);
    const double right = h[0] - (x[0] - center[0]);
    return (std::pow(std::max(left, 0.0), l) + std::pow(std::max(right, 0.0), l)) / l;
  }
  double rho = INFINITY;
  for (int d = 0; d < n; ++d) rho = std::min(rho, h[d] - std::fabs(x[d] - center[d]));
  rho = std::max(rho, 0.0);
  const double sphere_area = n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  double total = sphere_area * std::pow(rho, l) / l;

  const int m = n == 2 ? 32 : 12;
  Point step{0.0, 0.0, 0.0};
  double sub_volume = 1.0;
  for (int d = 0; d < n; ++d) {
    step[d] = 2.0 * h[d] / m;
    sub_volume *= step[d];
  }
  const int count = n == 2 ? m * m : m * m * m;
  for (int s = 0; s < count; ++s) {
    Point z{0.0, 0.0, 0.0};
    int rest = s;
    for (int d = 0; d < n; ++d) {
      z[d] = center[d] - h[d] + (rest % m + 0.5) * step[d];
      rest /= m;
    }
    const double r = distance(z, x);
    if (r > rho) total += std::pow(r, l - n) * sub_volume;
  }
  return total;
}

namespace {

double riesz_value(const Point& x, std::span<const SourceCell> cells, const GridFunction& f, double l) {
  const auto& g = f.grid();
  const int n = f.dim();
  double sum = 0.0;
  for (const auto& c : cells) {
    const Point h = g.half_widths(c.index);
    bool inside = true;
    for (int d = 0; d < n; ++d) inside = inside && std::fabs(x[d] - c.y[d]) <= h[d];
    const double value = f[c.index];
    if (inside)
      sum += value * riesz_cell_integral(n, l, x, c.y, h);
    else
      sum += value * std::pow(distance(x, c.y), l - n) * g.cell_volume(c.index);
  }
  return sum;
}

}  // namespace

GridFunction riesz_potential(const GridFunction& f, double l) {
  check_riesz(f, l);
  const auto cells = support_cells(f);
  std::vector<double> out(f.size(), 0.0);
  if (!cells.empty()) {
    const auto& g = f.grid();
    parallel_for(f.size(), [&](std::size_t i) { out[i] = riesz_value(g.point(i), cells, f, l); });
  }
  return GridFunction(f.grid_ptr(), std::move(out));
}

double riesz_potential_at(const GridFunction& f, double l, const Point& x) {
  check_riesz(f, l);
  const auto cells = support_cells(f);
  return riesz_value(x, cells, f, l);
}

GridFunction apply(const OperatorSpec& op, const GridFunction& f) {
  op.validate(f.dim());
  switch (op.kind) {
    case OperatorKind::HLMaximal: return hl_maximal(f, op.radius_set);
    case OperatorKind::FractionalMaximal: return fractional_maximal(f, op.l, op.radius_set);
    case OperatorKind::RieszPotential: return riesz_potential(f, op.l);
    case OperatorKind::CommutatorMb: return commutator_mb(f, *op.symbol, op.radius_set);
    case OperatorKind::CommutatorMbl: return commutator_mbl(f, *op.symbol, op.l, op.radius_set);
  }
  throw std::logic_error("apply: unknown operator kind");
}

double apply_at(const OperatorSpec& op, const GridFunction& f, const Point& x) {
  op.validate(f.dim());
  switch (op.kind) {
    case OperatorKind::HLMaximal: return hl_maximal_at(f, x, op.radius_set);
    case OperatorKind::FractionalMaximal: return fractional_maximal_at(f, op.l, x, op.radius_set);
    case OperatorKind::RieszPotential: return riesz_potential_at(f, op.l, x);
    case OperatorKind::CommutatorMb: return commutator_mb_at(f, *op.symbol, x, op.radius_set);
    case OperatorKind::CommutatorMbl: return commutator_mbl_at(f, *op.symbol, op.l, x, op.radius_set);
  }
  throw std::logic_error("apply_at: unknown operator kind");
}

double bmo_seminorm(const GridFunction& b, std::span<const Cube> family) {
  if (family.empty()) throw std::invalid_argument("bmo_seminorm: empty cube family");
  const auto& g = b.grid();
  const int n = g.dim();
  for (const auto& q : family) {
    if (!(q.half_side > 0.0)) throw std::invalid_argument("bmo_seminorm: cube with non-positive side");
    for (int d = 0; d < n; ++d)
      if (q.center[d] - q.half_side < g.axis(d).lower() || q.center[d] + q.half_side > g.axis(d).upper())
        throw std::invalid_argument("bmo_seminorm: cube outside grid");
  }

  std::vector<double> osc(family.size(), 0.0);
  parallel_for(family.size(), [&](std::size_t qi) {
    const auto& q = family[qi];
    // Per-axis index ranges of cell centers inside the cube.
    std::array<std::size_t, kMaxDim> lo{0, 0, 0}, hi{1, 1, 1};
    for (int d = 0; d < n; ++d) {
      const auto pts = g.axis(d).points();
      const auto ud = static_cast<std::size_t>(d);
      lo[ud] = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), q.center[d] - q.half_side) - pts.begin());
      hi[ud] = static_cast<std::size_t>(std::upper_bound(pts.begin(), pts.end(), q.center[d] + q.half_side) - pts.begin());
      if (lo[ud] >= hi[ud]) return;
    }
    double vol = 0.0, mass = 0.0;
    auto for_each_cell = [&](auto&& fn) {
      for (std::size_t k = lo[2]; k < hi[2]; ++k)
        for (std::size_t j = lo[1]; j < hi[1]; ++j)
          for (std::size_t i = lo[0]; i < hi[0]; ++i) fn(g.flatten({i, j, k}));
    };
    for_each_cell([&](std::size_t c) {
      const double v = g.cell_volume(c);
      vol += v;
      mass += b[c] * v;
    });
    const double mean = mass / vol;
    double dev = 0.0;
    for_each_cell([&](std::size_t c) { dev += std::fabs(b[c] - mean) * g.cell_volume(c); });
    osc[qi] = dev / vol;
  });
  return *std::max_element(osc.begin(), osc.end());
}

std::vector<Cube> dyadic_cube_family(const TensorGrid& grid, int per_octave) {
  if (per_octave < 1) throw std::invalid_argument("dyadic_cube_family: per_octave must be >= 1");
  const int n = grid.dim();
  double lo = -INFINITY, hi = INFINITY;
  for (const auto& a : grid.axes()) {
    lo = std::max(lo, a.lower());
    hi = std::min(hi, a.upper());
  }
  const double s_min = grid.smallest_cell_width();
  const double s_max = 0.5 * (hi - lo);
  std::vector<Cube> out;
  const auto m_lo = static_cast<int>(std::ceil(per_octave * std::log2(s_min)));
  const auto m_hi = static_cast<int>(std::floor(per_octave * std::log2(s_max)));
  for (int m = m_lo; m <= m_hi; ++m) {
    const double s = std::exp2(static_cast<double>(m) / per_octave);
    const double stride = s / per_octave;
    const auto c_lo = static_cast<long>(std::ceil((lo + s) / stride));
    const auto c_hi = static_cast<long>(std::floor((hi - s) / stride));
    if (c_lo > c_hi) continue;
    const long span = c_hi - c_lo + 1;
    const long total = n == 1 ? span : (n == 2 ? span * span : span * span * span);
    for (long t = 0; t < total; ++t) {
      Cube q;
      q.half_side = s;
      long rest = t;
      for (int d = 0; d < n; ++d) {
        q.center[d] = static_cast<double>(c_lo + rest % span) * stride;
        rest /= span;
      }
      out.push_back(q);
    }
  }
  return out;
}

std::vector<Cube> origin_cube_family(const TensorGrid& grid, int per_octave) {
  if (per_octave < 1) throw std::invalid_argument("origin_cube_family: per_octave must be >= 1");
  double reach = INFINITY;
  for (const auto& a : grid.axes()) reach = std::min({reach, -a.lower(), a.upper()});
  const auto m_lo = static_cast<int>(std::ceil(per_octave * std::log2(grid.smallest_cell_width())));
  const auto m_hi = static_cast<int>(std::floor(per_octave * std::log2(reach)));
  std::vector<Cube> out;
  for (int m = m_lo; m <= m_hi; ++m) out.push_back(Cube{{0.0, 0.0, 0.0}, std::exp2(static_cast<double>(m) / per_octave)});
  return out;
}

double SizeConditionResult::constant() const {
  return std::max(far_constant.value_or(0.0), near_constant.value_or(0.0));
}

SizeConditionResult verify_size_condition(const OperatorSpec& op, int j, const GridFunction& f,
                                          std::span<const Point> probes) {
  const auto& g = f.grid();
  const int n = f.dim();
  op.validate(n);
  double l1 = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    if (annulus_index(euclidean_norm(g.point(i))) != j)
      throw std::invalid_argument("verify_size_condition: f is not supported in A_j");
    l1 += std::fabs(f[i]) * g.cell_volume(i);
  }
  const double far_edge = std::ldexp(1.0, j + 1);
  const double near_edge = std::ldexp(1.0, j - 2);
  std::vector<ProbeZone> zones;
  for (const auto& x : probes) {
    const double r = euclidean_norm(x);
    if (r >= far_edge)
      zones.push_back(ProbeZone::Far);
    else if (r <= near_edge)
      zones.push_back(ProbeZone::Near);
    else
      throw std::invalid_argument("verify_size_condition: probe in the excluded middle zone");
  }

  SizeConditionResult result;
  const double s = op.decay_order(n);
  result.degenerate = l1 == 0.0;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const auto& x = probes[p];
    const double value = result.degenerate ? 0.0 : apply_at(op, f, x);
    double scaled = 0.0;
    if (!result.degenerate) {
      scaled = zones[p] == ProbeZone::Far ? std::fabs(value) * std::pow(euclidean_norm(x), n - s) / l1
                                          : std::fabs(value) * std::exp2(j * (n - s)) / l1;
    }
    auto& slot = zones[p] == ProbeZone::Far ? result.far_constant : result.near_constant;
    slot = std::max(slot.value_or(0.0), scaled);
    result.probes.push_back({x, zones[p], value, scaled});
  }
  return result;
}

}  // namespace hmk
