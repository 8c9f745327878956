#pragma once

/// \file
/// Mixed Lebesgue, mixed Morrey, mixed Herz and homogeneous mixed Herz-Morrey
/// norms of grid functions, computed by iterated midpoint quadrature with the
/// x_1 integration innermost.

#include <span>
#include <stdexcept>
#include <vector>

#include "hmk/grid.hpp"

namespace hmk {

/// Exponent tuple (q_1, ..., q_n), each q_i in (0, inf).
class ExponentVector {
 public:
  ExponentVector(std::initializer_list<double> q) : ExponentVector(std::vector<double>(q)) {}
  explicit ExponentVector(std::vector<double> q);
  /// (q, ..., q) with n entries.
  static ExponentVector constant(int n, double q);

  int size() const { return static_cast<int>(q_.size()); }
  double operator[](int i) const { return q_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return q_; }
  /// sum_i 1/q_i
  double reciprocal_sum() const;

  bool operator==(const ExponentVector&) const = default;

 private:
  std::vector<double> q_;
};

struct KRange {
  int lo;
  int hi;
  bool empty() const { return lo > hi; }
};

struct HerzMorreyParams {
  double alpha = 0.0;
  double p = 1.0;
  double lambda = 0.0;
  ExponentVector q{1.0};
  /// Outer supremum range for k_0. Must sit inside the decomposition range.
  KRange k0_range{0, -1};
};

/// Full k_0 range of a decomposition.
KRange full_range(const DyadicDecomposition& decomp);

double mixed_lebesgue_norm(const GridFunction& f, const ExponentVector& q);

/// ||f chi_k||_{q} for every k of the decomposition, k_min first. Throws
/// SupportError when f is nonzero at a sample outside every annulus.
std::vector<double> annulus_norms(const GridFunction& f, const ExponentVector& q,
                                  const DyadicDecomposition& decomp);

/// Thrown when a function has support the decomposition does not cover.
class SupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Herz-Morrey norm from precomputed annulus norms `terms` (index 0 is k_min).
/// Only alpha, p, lambda and k0_range of `params` are used.
double herz_morrey_from_terms(std::span<const double> terms, int k_min, const HerzMorreyParams& params);
double herz_from_terms(std::span<const double> terms, int k_min, double alpha, double p);

double herz_morrey_norm(const GridFunction& f, const HerzMorreyParams& params,
                        const DyadicDecomposition& decomp);
double herz_norm(const GridFunction& f, double alpha, double p, const ExponentVector& q,
                 const DyadicDecomposition& decomp);

/// Dyadic radii {2^k : k_min <= k <= k_max}.
std::vector<double> dyadic_radii(const DyadicDecomposition& decomp);

/// max over r of r^{-lambda} ||f 1_{|x| <= r}||_q.
double mixed_morrey_norm(const GridFunction& f, double lambda, const ExponentVector& q,
                         std::span<const double> radius_set);

/// Mixed norm with |x_i|^{alpha_i q_i} multiplying the axis-i integrand.
double weighted_mixed_norm(const GridFunction& f, const ExponentVector& q, std::span<const double> alphas);

/// max(1, 2^{sum_i (1 - q_i)/q_i})
double quasi_triangle_constant(const ExponentVector& q);

/// ||f + g|| / (||f|| + ||g||) in the Herz-Morrey norm; 0 when both are zero.
double quasi_triangle_defect(const GridFunction& f, const GridFunction& g, const HerzMorreyParams& params,
                             const DyadicDecomposition& decomp);

}  // namespace hmk
