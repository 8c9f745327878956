#pragma once

/// \file
/// Admissibility of exponent tuples for the Herz-Morrey boundedness theorems,
/// and the boundary of the admissible region over two free parameters.
///
/// Theorem ids and the conditions they encode:
///
///   thm3_1, cor3_1, thm4_1, thm4_3, cor4_1 (sublinear T, M_b, [b,T]):
///       lambda >= 0, p > 0, 1 < q_i,
///       lambda - sum 1/q_i < alpha < n (1 - (1/n) sum 1/q_i)
///   thm3_2, cor3_2 (fractional I_l, L^{q1} -> L^{q2}):
///       0 < l < n, lambda >= 0, 0 < p1 <= p2, 1 < q1_i < 1/l,
///       l = sum 1/q1_i - sum 1/q2_i,
///       lambda - sum 1/q2_i < alpha < n - sum 1/q1_i
///   thm4_2 (fractional maximal commutator M_b^l):
///       1 < l, lambda >= 0, 0 < p1 <= p2, 1 < q1_i < l,
///       1/l = (1/n) sum 1/q1_i - (1/n) sum 1/q2_i,
///       lambda - sum 1/q2_i < alpha < n - sum 1/q1_i
///   thm4_4 (commutator [b, T_l]), cor4_2:
///       as thm3_2 but with l = (1/n) sum 1/q1_i - (1/n) sum 1/q2_i
///
/// Strict inequalities are strict: a point on the boundary is inadmissible
/// with margin 0. The coupling conventions are kept per theorem; when a
/// parameter set satisfies one convention but not the other a diagnostic says
/// so.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hmk {

enum class TheoremId {
  Thm3_1,
  Cor3_1,
  Thm3_2,
  Cor3_2,
  Thm4_1,
  Thm4_2,
  Thm4_3,
  Cor4_1,
  Thm4_4_commutator_fractional,
  Cor4_2,
};

inline constexpr std::array<TheoremId, 10> kAllTheorems = {
    TheoremId::Thm3_1, TheoremId::Cor3_1, TheoremId::Thm3_2, TheoremId::Cor3_2,
    TheoremId::Thm4_1, TheoremId::Thm4_2, TheoremId::Thm4_3, TheoremId::Cor4_1,
    TheoremId::Thm4_4_commutator_fractional, TheoremId::Cor4_2};

std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view name);

/// Same-space theorems (one p, one q) versus the L^{q1} -> L^{q2} ones.
bool is_two_space(TheoremId id);

/// Every symbol a clause may mention. Two-space theorems read p1/p2/q1/q2;
/// the others read p/q.
struct ExponentParams {
  int n = 1;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::optional<double> p;
  std::optional<double> p1;
  std::optional<double> p2;
  std::optional<double> l;
  std::optional<std::vector<double>> q;
  std::optional<std::vector<double>> q1;
  std::optional<std::vector<double>> q2;
};

class MissingParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ClauseKind {
  Range,     ///< sign/range condition on a single symbol
  Coupling,  ///< relation tying l to the exponent vectors
  Window,    ///< the alpha window
};

struct ClauseResult {
  std::string id;
  ClauseKind kind;
  bool satisfied;
  /// Signed slack: > 0 inside, 0 on the boundary, < 0 violated. Equality
  /// clauses report -|lhs - rhs|.
  double margin;
};

struct AdmissibilityVerdict {
  TheoremId theorem;
  bool admissible = false;
  std::vector<std::string> failed_clauses;
  std::vector<ClauseResult> clauses;
  /// Set when lambda = 0: the series argument behind the theorem needs
  /// lambda > 0, and the lambda = 0 case is the mixed Herz space result.
  std::vector<std::string> caveats;
  std::vector<std::string> diagnostics;

  double margin(std::string_view clause_id) const;
};

/// Tolerance of equality (coupling) clauses.
inline constexpr double kCouplingTolerance = 1e-12;

AdmissibilityVerdict check(TheoremId theorem, const ExponentParams& params);

nlohmann::json to_json(const AdmissibilityVerdict& v);

enum class RegionAxis { Alpha, Lambda, P, P2 };

std::string_view to_string(RegionAxis axis);
std::optional<RegionAxis> parse_region_axis(std::string_view name);

struct Window {
  double u_lo, u_hi;
  double v_lo, v_hi;
};

/// One closed polyline: the boundary of a convex admissible piece, listed
/// counter-clockwise without repeating the first vertex.
struct Polyline {
  std::vector<std::array<double, 2>> vertices;
};

/// Boundary of {(u, v) in window : check() admissible} with the other
/// parameters taken from `fixed`. Every clause is affine in the supported free
/// axes, so the region is one convex polygon (or empty).
std::vector<Polyline> region_boundary(TheoremId theorem, const ExponentParams& fixed, RegionAxis u,
                                      RegionAxis v, const Window& window);

/// Strict point-in-polygon classification against polylines from
/// region_boundary.
bool region_contains(const std::vector<Polyline>& region, double u, double v);

/// Writes `polyline,vertex,u,v` rows with a versioned header.
std::string region_csv(const std::vector<Polyline>& region, RegionAxis u, RegionAxis v);

}  // namespace hmk
