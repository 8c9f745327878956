#pragma once

/// \file
/// Maximal-type operators, the Riesz potential, BMO mean oscillation and the
/// maximal commutators M_b, M_b^l on grid functions.
///
/// The supremum over r > 0 is taken over a finite radius set. Ball integrals
/// use the cell-center rule: a source cell contributes its full mass when its
/// center lies in the closed ball B(x, r). Balls that leave the grid are
/// normalized by the full Euclidean ball volume.

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hmk/grid.hpp"

namespace hmk {

enum class OperatorKind { HLMaximal, FractionalMaximal, RieszPotential, CommutatorMb, CommutatorMbl };

std::string_view to_string(OperatorKind kind);
std::optional<OperatorKind> parse_operator_kind(std::string_view name);

/// A BMO symbol b sampled on the grid. `pointwise` evaluates b off the grid and
/// is only required when a commutator is evaluated at arbitrary points.
struct BmoSymbol {
  GridFunction b;
  PointFunction pointwise;
  double seminorm_estimate = 0.0;

  double at(const Point& x) const;
};

/// b(x) = log|x| sampled on `grid` (which must avoid the origin), with its
/// mean oscillation estimated over a dyadic cube family.
std::shared_ptr<const BmoSymbol> log_symbol(const GridPtr& grid);

struct OperatorSpec {
  OperatorKind kind = OperatorKind::HLMaximal;
  /// Fractional order: l for FractionalMaximal and RieszPotential, the l of
  /// |B|^{-1/l'} for CommutatorMbl.
  double l = 0.0;
  std::shared_ptr<const BmoSymbol> symbol;
  std::vector<double> radius_set;

  static OperatorSpec hl_maximal(std::vector<double> radii);
  static OperatorSpec fractional_maximal(double l, std::vector<double> radii);
  static OperatorSpec riesz_potential(double l);
  static OperatorSpec commutator_mb(std::shared_ptr<const BmoSymbol> b, std::vector<double> radii);
  static OperatorSpec commutator_mbl(double l, std::shared_ptr<const BmoSymbol> b, std::vector<double> radii);

  /// Throws std::invalid_argument when the parameters are outside the
  /// operator's range for dimension n.
  void validate(int n) const;

  /// The order s in the size conditions |Tf(x)| <= C ||f||_1 / |x|^{n-s}:
  /// 0 for M and M_b, l for the fractional kinds, n/l for M_b^l.
  double decay_order(int n) const;

  bool is_maximal_type() const { return kind != OperatorKind::RieszPotential; }
};

/// Radii 2^{m/per_octave} from half the smallest cell width up to the grid
/// diameter.
std::vector<double> default_radius_set(const TensorGrid& grid, int per_octave = 4);

/// Volume of the Euclidean ball of radius r in R^n.
double ball_volume(int n, double r);

GridFunction hl_maximal(const GridFunction& f, std::span<const double> radius_set);
double hl_maximal_at(const GridFunction& f, const Point& x, std::span<const double> radius_set);

GridFunction fractional_maximal(const GridFunction& f, double l, std::span<const double> radius_set);
double fractional_maximal_at(const GridFunction& f, double l, const Point& x, std::span<const double> radius_set);

GridFunction riesz_potential(const GridFunction& f, double l);
double riesz_potential_at(const GridFunction& f, double l, const Point& x);

/// Integral of |x - y|^{l-n} over the cell with half-widths `h` centered at
/// `center`, for x inside that cell. Closed form in 1-D; for n >= 2 the ball
/// around x touching the nearest face is integrated radially and the rest of
/// the cell by a sub-cell midpoint rule.
double riesz_cell_integral(int n, double l, const Point& x, const Point& center, const Point& h);

GridFunction commutator_mb(const GridFunction& f, const BmoSymbol& b, std::span<const double> radius_set);
double commutator_mb_at(const GridFunction& f, const BmoSymbol& b, const Point& x,
                        std::span<const double> radius_set);

GridFunction commutator_mbl(const GridFunction& f, const BmoSymbol& b, double l,
                            std::span<const double> radius_set);
double commutator_mbl_at(const GridFunction& f, const BmoSymbol& b, double l, const Point& x,
                         std::span<const double> radius_set);

GridFunction apply(const OperatorSpec& op, const GridFunction& f);
/// Value of op(f) at an arbitrary point x.
double apply_at(const OperatorSpec& op, const GridFunction& f, const Point& x);

/// Axis-aligned cube [c - s, c + s]^n.
struct Cube {
  Point center{0.0, 0.0, 0.0};
  double half_side = 0.0;
};

/// max over Q of |Q|^{-1} int_Q |b - mean_Q b|, with |Q| and the mean taken over
/// the cells whose centers lie in Q. Cubes containing no cell are skipped.
double bmo_seminorm(const GridFunction& b, std::span<const Cube> family);

/// Cubes with half-sides 2^{m/per_octave} between the smallest cell width and
/// half the grid extent, centered on the lattice (s / per_octave) Z^n, kept
/// only when they lie inside the grid.
std::vector<Cube> dyadic_cube_family(const TensorGrid& grid, int per_octave);

/// Cubes centered at the origin with half-sides 2^{m/per_octave} that fit in
/// the grid.
std::vector<Cube> origin_cube_family(const TensorGrid& grid, int per_octave);

enum class ProbeZone { Far, Near };

struct ProbeValue {
  Point x;
  ProbeZone zone;
  double operator_value;
  /// |Tf(x)| |x|^{n-s} / ||f||_1 (far) or |Tf(x)| 2^{j(n-s)} / ||f||_1 (near).
  double scaled;
};

struct SizeConditionResult {
  std::optional<double> far_constant;
  std::optional<double> near_constant;
  std::vector<ProbeValue> probes;
  /// f = 0: every constant is reported as 0.
  bool degenerate = false;

  double constant() const;
};

/// Empirical constants of the far / near size conditions for op on f, where f
/// is supported in the annulus A_j. Probes must satisfy |x| >= 2^{j+1} (far)
/// or |x| <= 2^{j-2} (near).
SizeConditionResult verify_size_condition(const OperatorSpec& op, int j, const GridFunction& f,
                                          std::span<const Point> probes);

}  // namespace hmk
