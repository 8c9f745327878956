#pragma once

/// \file
/// Empirical checks of the boundedness theorems: norm-ratio sweeps over a
/// corpus and an exponent grid, refinement studies, divergence probes outside
/// the admissible window, and the inclusion checks between Herz-Morrey spaces.

#include <optional>
#include <string>
#include <vector>

#include "hmk/corpus.hpp"
#include "hmk/exponents.hpp"
#include "hmk/norms.hpp"
#include "hmk/operators.hpp"

namespace hmk {

/// Grid-independent description of an operator. instantiate() builds the
/// radius set and the BMO symbol (log|x|) for a concrete grid.
struct OperatorRecipe {
  OperatorKind kind = OperatorKind::HLMaximal;
  double l = 0.0;
  int radii_per_octave = 4;
};

OperatorSpec instantiate(const OperatorRecipe& recipe, const GridPtr& grid);

/// Throws std::invalid_argument unless the operator is one the theorem is
/// about.
void require_pairing(OperatorKind kind, TheoremId theorem);

/// One exponent point. Same-space theorems use p1 and q1 on both sides.
struct ExponentPoint {
  double alpha = 0.0;
  double lambda = 0.0;
  double p1 = 1.0;
  double p2 = 1.0;
  std::vector<double> q1;
  std::vector<double> q2;
};

ExponentParams to_exponent_params(TheoremId theorem, const ExponentPoint& e, int n, double l);

struct SweepRow {
  std::string function_id;
  std::size_t exponent_index;
  ExponentPoint exponents;
  double source_norm;
  double target_norm;
  /// Empty for degenerate rows (source norm 0).
  std::optional<double> ratio;
  bool admissible;
};

struct ExperimentReport {
  OperatorKind op;
  TheoremId theorem;
  double l;
  GridParams grid;
  std::vector<SweepRow> rows;
  /// Max ratio over non-degenerate rows, per exponent point (0 when every row
  /// is degenerate).
  std::vector<double> max_ratio;
};

/// Applies the operator to every corpus function once and computes source and
/// target Herz-Morrey norms (k_0 over the full range) at every exponent point.
/// The operator output is restricted to the annuli before its norm is taken.
/// Exponent points failing a coupling clause are rejected before any
/// computation; points failing only range or window clauses are recorded with
/// admissible = false.
ExperimentReport boundedness_sweep(const OperatorRecipe& op, TheoremId theorem, const CorpusSpec& corpus,
                                   const std::vector<ExponentPoint>& exponents);

std::string report_csv(const ExperimentReport& report);

struct RefinementStudy {
  std::vector<int> samples_per_octave;
  /// max_ratio[r][e]: resolution r, exponent point e.
  std::vector<std::vector<double>> max_ratio;
  /// Largest |m_{r+1} - m_r| / m_r over consecutive resolutions, per exponent.
  std::vector<double> relative_change;
};

RefinementStudy refinement_study(const OperatorRecipe& op, TheoremId theorem, CorpusSpec corpus,
                                 const std::vector<ExponentPoint>& exponents, const std::vector<int>& resolutions);

struct ProbeRow {
  KRange k_range;
  double max_ratio;
  std::string argmax_function;
};

struct DivergenceReport {
  OperatorKind op;
  TheoremId theorem;
  ExponentPoint exponents;
  std::vector<std::string> failed_clauses;
  std::vector<ProbeRow> rows;
  /// "divergence observed", "no divergence observed" or "inconclusive".
  std::string trend;
};

/// Growth factor between consecutive k-ranges that counts as divergence.
inline constexpr double kDivergenceGrowth = 1.5;

/// Max norm ratio over single-annulus indicators j in each k-range, on a grid
/// spanning that range. The parameters must fail exactly one clause.
DivergenceReport divergence_probe(const OperatorRecipe& op, TheoremId theorem, const ExponentPoint& exponents,
                                  int n, int samples_per_octave, const std::vector<KRange>& k_ranges);

std::string probe_csv(const DivergenceReport& report);

struct InclusionCheck {
  std::string name;
  std::size_t comparisons = 0;
  std::size_t violations = 0;
  /// Smallest rhs - lhs over all comparisons, relative to max(lhs, rhs).
  double worst_margin = 0.0;
};

struct InclusionGrid {
  std::vector<double> alphas{-0.5, -0.25, 0.0, 0.25, 0.5};
  std::vector<double> qs{1.0, 1.5, 2.0, 3.0, 4.0};
  std::vector<double> lambdas{0.0, 0.1, 0.25};
  std::vector<double> ps{0.5, 1.0, 2.0, 4.0};
};

/// Relative slack allowed in the alpha and q comparisons, which pass through
/// pow() and a Hoelder step. The p comparison is exact.
inline constexpr double kInclusionTolerance = 1e-12;

/// Three checks per corpus function:
///   p:     p1 <= p2 gives ||f||_{p2} <= ||f||_{p1}
///   alpha: a2 <= a1 gives ||f||_{a2} <= ||f||_{a1} when f lives in |x| >= 1/2,
///          and the reverse when f lives in |x| <= 1 (functions crossing both
///          are skipped)
///   q:     q1 <= q2 gives ||f||_{alpha, q1} <= C ||f||_{alpha + s, q2} with
///          s = sum (1/q1_i - 1/q2_i), C = 1 for n = 1 and 2^s otherwise
std::vector<InclusionCheck> inclusion_suite(const CorpusSpec& corpus, const InclusionGrid& grid = {});

}  // namespace hmk
