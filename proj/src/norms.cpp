#include "hmk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmk {

ExponentVector::ExponentVector(std::vector<double> q) : q_(std::move(q)) {
  if (q_.empty() || q_.size() > kMaxDim) throw std::invalid_argument("ExponentVector: need 1..3 entries");
  for (double v : q_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("ExponentVector: every q_i must lie in (0, inf)");
}

ExponentVector ExponentVector::constant(int n, double q) {
  return ExponentVector(std::vector<double>(static_cast<std::size_t>(n), q));
}

double ExponentVector::reciprocal_sum() const {
  double s = 0.0;
  for (double v : q_) s += 1.0 / v;
  return s;
}

KRange full_range(const DyadicDecomposition& decomp) { return {decomp.k_min(), decomp.k_max()}; }

namespace {

/// Iterated L^{q_1} ... L^{q_n} quadrature of nonnegative samples laid out with
/// x_1 fastest. `alphas`, when non-empty, multiplies the axis-i integrand by
/// |x_i|^{alpha_i q_i}.
double iterated_norm(const TensorGrid& grid, std::vector<double> buf, const ExponentVector& q,
                     std::span<const double> alphas) {
  for (int d = 0; d < grid.dim(); ++d) {
    const auto& axis = grid.axis(d);
    const std::size_t len = axis.size();
    const std::size_t outer = buf.size() / len;
    const double qd = q[d];
    std::vector<double> weight(len);
    for (std::size_t i = 0; i < len; ++i) {
      weight[i] = axis.cell_width(i);
      if (!alphas.empty() && alphas[static_cast<std::size_t>(d)] != 0.0)
        weight[i] *= std::pow(std::fabs(axis.point(i)), alphas[static_cast<std::size_t>(d)] * qd);
      if (!std::isfinite(weight[i])) throw std::domain_error("weighted norm: weight not finite on grid");
    }
    std::vector<double> next(outer, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
      const double* row = buf.data() + o * len;
      double s = 0.0;
      for (std::size_t i = 0; i < len; ++i)
        if (row[i] != 0.0) s += std::pow(row[i], qd) * weight[i];
      next[o] = s == 0.0 ? 0.0 : std::pow(s, 1.0 / qd);
    }
    buf = std::move(next);
  }
  return buf.front();
}

void require_dim(const GridFunction& f, const ExponentVector& q) {
  if (q.size() != f.dim()) throw std::invalid_argument("exponent vector length does not match dimension");
}

std::vector<double> abs_values(const GridFunction& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::fabs(f[i]);
  return out;
}

/// (sum_i a_i^p)^{1/p} with the largest term factored out.
double lp_sum(std::span<const double> a, double p) {
  double m = 0.0;
  for (double v : a) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a)
    if (v != 0.0) s += v == m ? 1.0 : std::pow(v / m, p);
  return m * std::pow(s, 1.0 / p);
}

void require_decomp(const GridFunction& f, const DyadicDecomposition& decomp) {
  if (decomp.size() != f.size()) throw std::invalid_argument("decomposition does not match grid");
}

}  // namespace

double mixed_lebesgue_norm(const GridFunction& f, const ExponentVector& q) {
  require_dim(f, q);
  return iterated_norm(f.grid(), abs_values(f), q, {});
}

std::vector<double> annulus_norms(const GridFunction& f, const ExponentVector& q,
                                  const DyadicDecomposition& decomp) {
  require_dim(f, q);
  require_decomp(f, decomp);
  const auto k_of = decomp.annulus_indices();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0 && k_of[i] == DyadicDecomposition::kOutside)
      throw SupportError("function is nonzero outside the dyadic decomposition");

  std::vector<double> out(static_cast<std::size_t>(decomp.count()), 0.0);
  for (int k = decomp.k_min(); k <= decomp.k_max(); ++k) {
    std::vector<double> buf(f.size(), 0.0);
    bool any = false;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (k_of[i] == k && f[i] != 0.0) {
        buf[i] = std::fabs(f[i]);
        any = true;
      }
    if (any) out[static_cast<std::size_t>(k - decomp.k_min())] = iterated_norm(f.grid(), std::move(buf), q, {});
  }
  return out;
}

double herz_morrey_from_terms(std::span<const double> terms, int k_min, const HerzMorreyParams& params) {
  if (params.k0_range.empty()) throw std::invalid_argument("herz_morrey_norm: empty k0 range");
  const int k_max = k_min + static_cast<int>(terms.size()) - 1;
  if (params.k0_range.lo < k_min || params.k0_range.hi > k_max)
    throw std::invalid_argument("herz_morrey_norm: k0 range outside the decomposition");
  if (!(params.p > 0.0) || !std::isfinite(params.p)) throw std::invalid_argument("herz_morrey_norm: p must lie in (0, inf)");
  if (!(params.lambda >= 0.0)) throw std::invalid_argument("herz_morrey_norm: lambda must be >= 0");

  std::vector<double> weighted(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    weighted[i] = std::exp2(params.alpha * (k_min + static_cast<int>(i))) * terms[i];

  double best = 0.0;
  for (int k0 = params.k0_range.lo; k0 <= params.k0_range.hi; ++k0) {
    const auto partial = std::span<const double>(weighted).first(static_cast<std::size_t>(k0 - k_min + 1));
    best = std::max(best, std::exp2(-params.lambda * k0) * lp_sum(partial, params.p));
  }
  return best;
}

double herz_from_terms(std::span<const double> terms, int k_min, double alpha, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("herz_norm: p must lie in (0, inf)");
  std::vector<double> weighted(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    weighted[i] = std::exp2(alpha * (k_min + static_cast<int>(i))) * terms[i];
  return lp_sum(weighted, p);
}

double herz_morrey_norm(const GridFunction& f, const HerzMorreyParams& params,
                        const DyadicDecomposition& decomp) {
  if (params.k0_range.empty()) throw std::invalid_argument("herz_morrey_norm: empty k0 range");
  const auto terms = annulus_norms(f, params.q, decomp);
  return herz_morrey_from_terms(terms, decomp.k_min(), params);
}

double herz_norm(const GridFunction& f, double alpha, double p, const ExponentVector& q,
                 const DyadicDecomposition& decomp) {
  const auto terms = annulus_norms(f, q, decomp);
  return herz_from_terms(terms, decomp.k_min(), alpha, p);
}

std::vector<double> dyadic_radii(const DyadicDecomposition& decomp) {
  std::vector<double> r;
  for (int k = decomp.k_min(); k <= decomp.k_max(); ++k) r.push_back(std::ldexp(1.0, k));
  return r;
}

double mixed_morrey_norm(const GridFunction& f, double lambda, const ExponentVector& q,
                         std::span<const double> radius_set) {
  require_dim(f, q);
  if (radius_set.empty()) throw std::invalid_argument("mixed_morrey_norm: empty radius set");
  std::vector<double> radius(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) radius[i] = euclidean_norm(f.grid().point(i));
  double best = 0.0;
  for (double r : radius_set) {
    if (!(r > 0.0)) throw std::invalid_argument("mixed_morrey_norm: radii must be positive");
    std::vector<double> buf(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (radius[i] <= r) buf[i] = std::fabs(f[i]);
    best = std::max(best, std::pow(r, -lambda) * iterated_norm(f.grid(), std::move(buf), q, {}));
  }
  return best;
}

double weighted_mixed_norm(const GridFunction& f, const ExponentVector& q, std::span<const double> alphas) {
  require_dim(f, q);
  if (static_cast<int>(alphas.size()) != f.dim())
    throw std::invalid_argument("weighted_mixed_norm: alphas length does not match dimension");
  return iterated_norm(f.grid(), abs_values(f), q, alphas);
}

double quasi_triangle_constant(const ExponentVector& q) {
  double s = 0.0;
  for (double v : q.values()) s += (1.0 - v) / v;
  return std::max(1.0, std::exp2(s));
}

double quasi_triangle_defect(const GridFunction& f, const GridFunction& g, const HerzMorreyParams& params,
                             const DyadicDecomposition& decomp) {
  if (!f.same_grid(g)) throw std::invalid_argument("quasi_triangle_defect: grid mismatch");
  const double nf = herz_morrey_norm(f, params, decomp);
  const double ng = herz_morrey_norm(g, params, decomp);
  if (nf + ng == 0.0) return 0.0;
  return herz_morrey_norm(f + g, params, decomp) / (nf + ng);
}

}  // namespace hmk
