// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hmk/cli.hpp"
#include "hmk/corpus.hpp"
#include "hmk/experiments.hpp"
#include "hmk/exponents.hpp"
#include "hmk/format.hpp"
#include "hmk/norms.hpp"
#include "hmk/operators.hpp"
#include "oracles.hpp"

using namespace hmk;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double max_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = o.pass;
  std::ostringstream line;
  line.precision(3);
  line << std::fixed << secs;
  std::string timing = line.str() + " s";
  if (max_seconds > 0.0) {
    timing += " (limit " + format_double(max_seconds) + " s)";
    pass = pass && secs < max_seconds;
  }
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << " C" << id << " " << name << ": " << o.detail << " [" << timing << "]"
            << std::endl;
}

std::string num(double v) { return format_double(v); }

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

ExponentPoint same(double alpha, double lambda, double p, double q) {
  ExponentPoint e;
  e.alpha = alpha;
  e.lambda = lambda;
  e.p1 = p;
  e.p2 = p;
  e.q1 = {q};
  e.q2 = {q};
  return e;
}

ExponentPoint two(double alpha, double lambda, double p1, double p2, double q1, double q2) {
  ExponentPoint e;
  e.alpha = alpha;
  e.lambda = lambda;
  e.p1 = p1;
  e.p2 = p2;
  e.q1 = {q1};
  e.q2 = {q2};
  return e;
}

Outcome closed_form() {
  const auto g = make_dyadic_grid(1, -4, 4, 16);
  double worst = 0.0;
  int cases = 0;
  for (int j = -3; j <= 3; ++j) {
    const auto f = generate(parse_corpus_entry("annulus:" + std::to_string(j)), g);
    for (double alpha : {-0.3, 0.0, 0.7})
      for (double q : {1.0, 2.0, 4.0})
        for (double lambda : {0.0, 0.1}) {
          HerzMorreyParams p;
          p.alpha = alpha;
          p.p = 1.0;
          p.lambda = lambda;
          p.q = ExponentVector{q};
          p.k0_range = full_range(g.decomposition);
          const double got = herz_morrey_norm(f, p, g.decomposition);
          worst = std::max(worst, rel(got, std::exp2(j * (alpha + 1.0 / q - lambda))));
          ++cases;
        }
  }
  return {worst <= 1e-10, std::to_string(cases) + " cases, worst relative error " + num(worst) + " (tolerance 1e-10)"};
}

Outcome reductions() {
  const GridParams gp{2, -3, 3, 8};
  const auto g = make_grid(gp);
  // annuli, sums, tail and gaussian, topped up with random functions to 50
  const auto fixed = static_cast<int>(default_corpus(gp, 0).entries.size());
  const auto corpus = default_corpus(gp, 50 - fixed);
  std::size_t herz_mismatch = 0, herz_cases = 0;
  double worst_lq = 0.0;
  for (const auto& e : corpus.entries) {
    const auto f = generate(e, g);
    for (double alpha : {-0.5, 0.0, 0.5})
      for (double p : {0.5, 1.0, 2.0})
        for (double q : {1.0, 2.0, 3.0}) {
          HerzMorreyParams hm;
          hm.alpha = alpha;
          hm.p = p;
          hm.lambda = 0.0;
          hm.q = ExponentVector::constant(2, q);
          hm.k0_range = full_range(g.decomposition);
          if (herz_morrey_norm(f, hm, g.decomposition) != herz_norm(f, alpha, p, hm.q, g.decomposition))
            ++herz_mismatch;
          ++herz_cases;
        }
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      const double want = oracle::scalar_lq(f, q);
      const double got = mixed_lebesgue_norm(f, ExponentVector::constant(2, q));
      worst_lq = std::max(worst_lq, want == 0.0 ? std::fabs(got) : rel(got, want));
    }
  }
  const bool ok = corpus.entries.size() == 50 && herz_mismatch == 0 && worst_lq <= 1e-10;
  return {ok, std::to_string(corpus.entries.size()) + " functions (n = 2); lambda = 0 vs herz: " +
                  std::to_string(herz_mismatch) + " of " + std::to_string(herz_cases) +
                  " differ; scalar L^q worst relative error " + num(worst_lq)};
}

Outcome inclusions() {
  const auto corpus = default_corpus({1, -4, 4, 16}, 20);
  const auto checks = inclusion_suite(corpus);
  bool ok = checks.size() == 3;
  std::string detail;
  for (const auto& c : checks) {
    ok = ok && c.violations == 0 && c.comparisons > 0;
    detail += c.name + " " + std::to_string(c.violations) + "/" + std::to_string(c.comparisons) +
              " violations, worst margin " + num(c.worst_margin) + "; ";
  }
  return {ok, detail};
}

Outcome quasi_triangle() {
  const GridParams gp{1, -4, 4, 16};
  const auto g = make_grid(gp);
  const auto corpus = default_corpus(gp, 20);
  std::mt19937_64 rng(2024);
  const std::vector<double> ps{1.0, 1.5, 2.0, 4.0}, qs{1.0, 1.5, 2.0, 4.0}, alphas{-0.5, 0.0, 0.5},
      lambdas{0.0, 0.1, 0.25};
  auto pick = [&](const auto& v) { return v[rng() % v.size()]; };
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = generate(corpus.entries[rng() % corpus.entries.size()], g);
    const auto h = generate(corpus.entries[rng() % corpus.entries.size()], g);
    HerzMorreyParams p;
    p.alpha = pick(alphas);
    p.p = pick(ps);
    p.lambda = pick(lambdas);
    p.q = ExponentVector{pick(qs)};
    p.k0_range = full_range(g.decomposition);
    worst = std::max(worst, quasi_triangle_defect(f, h, p, g.decomposition));
  }
  return {worst <= 1.0 + 1e-12, "100 pairs, worst defect " + num(worst) + " (limit 1 + 1e-12)"};
}

std::vector<AxisGrid> random_axis(std::mt19937_64& rng, std::size_t count) {
  std::vector<double> pts, widths;
  double edge = -static_cast<double>(rng() % 8);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = std::ldexp(1.0, -static_cast<int>(rng() % 4));
    pts.push_back(edge + 0.5 * w);
    widths.push_back(w);
    edge += w;
  }
  return {AxisGrid(pts, widths)};
}

Outcome operator_oracles() {
  std::mt19937_64 rng(77);
  std::size_t grids = 0, mismatches = 0;
  for (std::size_t size = 1; size <= 64; ++size)
    for (int rep = 0; rep < 3; ++rep) {
      const auto grid = std::make_shared<const TensorGrid>(random_axis(rng, size));
      std::vector<double> v(size);
      for (auto& x : v) x = static_cast<double>(rng() % 9) * 0.25;
      const GridFunction f(grid, v);
      const auto radii = default_radius_set(*grid, 4);
      const auto got = hl_maximal(f, radii);
      const auto want = oracle::hl_1d(f, radii);
      for (std::size_t i = 0; i < size; ++i)
        if (got[i] != want[i]) ++mismatches;
      ++grids;
    }
  const auto g = make_dyadic_grid(1, -5, 1, 32);
  const auto ind = sample([](const Point& x) { return x[0] > 0.0 && x[0] < 1.0 ? 1.0 : 0.0; }, g.grid);
  const double riesz = riesz_potential_at(ind, 0.5, {2.0, 0.0, 0.0});
  const double riesz_err = rel(riesz, 2.0 * (std::sqrt(2.0) - 1.0));

  const auto cg = make_dyadic_grid(1, -4, 4, 16);
  const BmoSymbol constant{sample([](const Point&) { return 3.0; }, cg.grid), nullptr, 0.0};
  std::size_t nonzero = 0;
  for (const auto& e : default_corpus({1, -4, 4, 16}, 5).entries) {
    const auto mb = commutator_mb(generate(e, cg), constant, default_radius_set(*cg.grid, 4));
    for (double x : mb.values())
      if (x != 0.0) ++nonzero;
  }
  const bool ok = mismatches == 0 && riesz_err <= 0.01 && nonzero == 0;
  return {ok, "hl oracle: " + std::to_string(mismatches) + " mismatches over " + std::to_string(grids) +
                  " grids of 1..64 points; riesz " + num(riesz) + " relative error " + num(riesz_err) +
                  "; constant-b commutator nonzero values " + std::to_string(nonzero)};
}

struct Constants {
  double far_variation;
  double near_variation;
  double far;
  double near;
};

Constants size_constants(const OperatorSpec& op, int spo) {
  const auto g = make_dyadic_grid(1, -4, 5, spo);
  const auto f = generate(parse_corpus_entry("annulus:0"), g);
  const std::vector<Point> probes{{4, 0, 0}, {8, 0, 0}, {16, 0, 0}, {0, 0, 0}, {0.0625, 0, 0}, {0.125, 0, 0}};
  const auto res = verify_size_condition(op, 0, f, probes);
  double flo = INFINITY, fhi = 0.0, nlo = INFINITY, nhi = 0.0;
  for (const auto& p : res.probes) {
    auto& lo = p.zone == ProbeZone::Far ? flo : nlo;
    auto& hi = p.zone == ProbeZone::Far ? fhi : nhi;
    lo = std::min(lo, p.scaled);
    hi = std::max(hi, p.scaled);
  }
  return {(fhi - flo) / fhi, (nhi - nlo) / nhi, res.far_constant.value_or(0.0), res.near_constant.value_or(0.0)};
}

Outcome size_conditions() {
  std::vector<double> radii;
  for (int m = -96; m <= 96; ++m) radii.push_back(std::exp2(m / 16.0));
  bool ok = true;
  std::string detail;
  for (const auto& op : {OperatorSpec::hl_maximal(radii), OperatorSpec::riesz_potential(0.5)}) {
    const auto a = size_constants(op, 16), b = size_constants(op, 32);
    const double far_ref = rel(b.far, a.far), near_ref = rel(b.near, a.near);
    const double worst = std::max({a.far_variation, a.near_variation, b.far_variation, b.near_variation, far_ref, near_ref});
    ok = ok && worst < 0.2 && a.far > 0.0 && a.near > 0.0;
    detail += std::string(to_string(op.kind)) + ": far C " + num(a.far) + " -> " + num(b.far) + ", near C " +
              num(a.near) + " -> " + num(b.near) + ", probe variation " +
              num(std::max({a.far_variation, a.near_variation, b.far_variation, b.near_variation})) +
              ", refinement change " + num(std::max(far_ref, near_ref)) + "; ";
  }
  return {ok, detail};
}

Outcome sweeps() {
  struct Pairing {
    OperatorRecipe op;
    TheoremId theorem;
    std::vector<ExponentPoint> points;
  };
  const std::vector<ExponentPoint> same_pts{same(0.0, 0.1, 1.0, 2.0), same(0.25, 0.2, 2.0, 2.0),
                                            same(-0.1, 0.1, 1.0, 4.0)};
  const std::vector<ExponentPoint> two_pts{two(0.0, 0.1, 1.0, 1.0, 2.0, 4.0), two(0.25, 0.0, 1.0, 2.0, 2.0, 4.0),
                                           two(-0.1, 0.05, 2.0, 2.0, 2.0, 4.0)};
  const std::vector<Pairing> pairings{
      {{OperatorKind::HLMaximal, 0.0, 4}, TheoremId::Thm3_1, same_pts},
      {{OperatorKind::RieszPotential, 0.25, 4}, TheoremId::Thm3_2, two_pts},
      {{OperatorKind::FractionalMaximal, 0.25, 4}, TheoremId::Thm3_2, two_pts},
      {{OperatorKind::CommutatorMb, 0.0, 4}, TheoremId::Thm4_1, same_pts},
      {{OperatorKind::CommutatorMbl, 4.0, 4}, TheoremId::Thm4_2, two_pts},
  };
  const auto corpus = default_corpus({1, -4, 4, 16}, 20);
  bool ok = true;
  std::string detail;
  for (const auto& p : pairings) {
    for (const auto& e : p.points) ok = ok && check(p.theorem, to_exponent_params(p.theorem, e, 1, p.op.l)).admissible;
    const auto study = refinement_study(p.op, p.theorem, corpus, p.points, {16, 32});
    double worst = 0.0, largest = 0.0;
    for (std::size_t e = 0; e < p.points.size(); ++e) {
      worst = std::max(worst, study.relative_change[e]);
      for (const auto& row : study.max_ratio) {
        ok = ok && std::isfinite(row[e]) && row[e] > 0.0;
        largest = std::max(largest, row[e]);
      }
    }
    ok = ok && worst < 0.1;
    detail += std::string(to_string(p.op.kind)) + "/" + std::string(to_string(p.theorem)) + " max ratio " +
              num(largest) + " change " + num(worst) + "; ";
  }
  return {ok, detail};
}

Outcome divergence() {
  const auto rep = divergence_probe({OperatorKind::HLMaximal, 0.0, 4}, TheoremId::Thm3_1, same(0.6, 0.0, 1.0, 2.0), 1, 16,
                                    {{-3, 3}, {-6, 6}});
  if (rep.rows.size() != 2) return {false, "expected two rows"};
  const double growth = rep.rows[1].max_ratio / rep.rows[0].max_ratio;
  const double predicted = std::exp2(0.1 * 6);
  return {growth >= kDivergenceGrowth && rep.trend == "divergence observed",
          "width 6 -> 12: " + num(rep.rows[0].max_ratio) + " -> " + num(rep.rows[1].max_ratio) + ", growth " +
              num(growth) + " (threshold 1.5, series lower estimate " + num(predicted) + "), trend " + rep.trend};
}

ExponentParams fixed_params(TheoremId t, int n) {
  ExponentParams e;
  e.n = n;
  e.alpha = 0.0;
  e.lambda = 0.0;
  if (!is_two_space(t)) {
    e.p = 1.0;
    e.q = n == 1 ? std::vector<double>{2.0} : std::vector<double>{2.0, 4.0};
    return e;
  }
  e.p1 = 1.0;
  e.p2 = 2.0;
  e.q1 = n == 1 ? std::vector<double>{2.0} : std::vector<double>{2.0, 2.0};
  e.q2 = n == 1 ? std::vector<double>{4.0} : std::vector<double>{2.5, 2.5};
  // sum 1/q1 - sum 1/q2 is 1/4 (n = 1) or 1/5 (n = 2)
  const double gap = n == 1 ? 0.25 : 0.2;
  if (t == TheoremId::Thm4_2)
    e.l = n / gap;
  else if (t == TheoremId::Thm4_4_commutator_fractional || t == TheoremId::Cor4_2)
    e.l = gap / n;
  else
    e.l = gap;
  return e;
}

Outcome exponent_checker() {
  std::mt19937_64 rng(31);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::size_t points = 0, mismatches = 0, boundary = 0, boundary_bad = 0;
  for (auto t : kAllTheorems)
    for (int n : {1, 2}) {
      auto params = fixed_params(t, n);
      if (!check(t, params).admissible) return {false, std::string(to_string(t)) + " base point not admissible"};
      const Window w{-2.0, 2.0, 0.0, 1.5};
      const auto region = region_boundary(t, params, RegionAxis::Alpha, RegionAxis::Lambda, w);
      for (int i = 0; i < 10000; ++i) {
        params.alpha = uniform(w.u_lo, w.u_hi);
        params.lambda = uniform(w.v_lo, w.v_hi);
        if (check(t, params).admissible != region_contains(region, *params.alpha, *params.lambda)) ++mismatches;
        ++points;
      }
      // boundary points: both ends of the alpha window at dyadic lambda
      const auto& qs = is_two_space(t) ? *params.q1 : *params.q;
      const auto& qt = is_two_space(t) ? *params.q2 : *params.q;
      double s1 = 0.0, s2 = 0.0;
      for (double q : qs) s1 += 1.0 / q;
      for (double q : qt) s2 += 1.0 / q;
      for (int m = 0; m <= 64; ++m) {
        const double lambda = m / 64.0;
        for (double alpha : {lambda - s2, n - s1}) {
          params.alpha = alpha;
          params.lambda = lambda;
          const auto v = check(t, params);
          double min_margin = INFINITY;
          for (const auto& c : v.clauses)
            if (c.kind == ClauseKind::Window) min_margin = std::min(min_margin, c.margin);
          if (min_margin == 0.0) {
            ++boundary;
            if (v.admissible || region_contains(region, alpha, lambda)) ++boundary_bad;
          }
        }
      }
    }
  return {mismatches == 0 && boundary > 0 && boundary_bad == 0,
          std::to_string(points) + " points over 10 theorems (n = 1, 2), " + std::to_string(mismatches) +
              " mismatches; " + std::to_string(boundary) + " zero-margin points, " + std::to_string(boundary_bad) +
              " classified admissible"};
}

std::string cli_output(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

Outcome determinism() {
  int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  const auto s1 = cli_output({"suite"}, c1), s2 = cli_output({"suite"}, c2);
  const std::vector<std::string> sweep{"sweep", "--op", "mb", "--theorem", "thm4_1", "--q", "2", "--alpha", "0,0.25",
                                       "--lambda", "0.1", "--random-count", "20"};
  setenv("HMK_THREADS", "1", 1);
  const auto w1 = cli_output(sweep, c3);
  setenv("HMK_THREADS", "4", 1);
  const auto w2 = cli_output(sweep, c4);
  const auto w3 = cli_output(sweep, c4);
  unsetenv("HMK_THREADS");
  const bool ok = c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 && s1 == s2 && w1 == w2 && w2 == w3 && !w1.empty();
  return {ok, std::string("suite runs ") + (s1 == s2 ? "identical" : "differ") + " (" + std::to_string(s1.size()) +
                  " bytes); sweep with 1 and 4 threads " + (w1 == w2 && w2 == w3 ? "identical" : "differ") + " (" +
                  std::to_string(w1.size()) + " bytes)"};
}

}  // namespace

int main() {
  criterion(1, "closed_form_annulus_norms", 1.0, closed_form);
  criterion(2, "reduction_identities", 10.0, reductions);
  criterion(3, "inclusion_suite", 30.0, inclusions);
  criterion(4, "quasi_triangle", 0.0, quasi_triangle);
  criterion(5, "operator_oracles", 0.0, operator_oracles);
  criterion(6, "size_conditions", 0.0, size_conditions);
  criterion(7, "boundedness_sweeps", 300.0, sweeps);
  criterion(8, "divergence_probe", 0.0, divergence);
  criterion(9, "exponent_checker", 0.0, exponent_checker);
  criterion(10, "determinism", 0.0, determinism);
  std::cout << "acceptance: " << 10 - failures << " passed, " << failures << " failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
