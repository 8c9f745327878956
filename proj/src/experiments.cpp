#include "hmk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hmk/format.hpp"
#include "hmk/parallel.hpp"

namespace hmk {

OperatorSpec instantiate(const OperatorRecipe& recipe, const GridPtr& grid) {
  auto radii = default_radius_set(*grid, recipe.radii_per_octave);
  switch (recipe.kind) {
    case OperatorKind::HLMaximal: return OperatorSpec::hl_maximal(std::move(radii));
    case OperatorKind::FractionalMaximal: return OperatorSpec::fractional_maximal(recipe.l, std::move(radii));
    case OperatorKind::RieszPotential: return OperatorSpec::riesz_potential(recipe.l);
    case OperatorKind::CommutatorMb: return OperatorSpec::commutator_mb(log_symbol(grid), std::move(radii));
    case OperatorKind::CommutatorMbl:
      return OperatorSpec::commutator_mbl(recipe.l, log_symbol(grid), std::move(radii));
  }
  throw std::logic_error("instantiate: unknown operator kind");
}

void require_pairing(OperatorKind kind, TheoremId theorem) {
  bool ok = false;
  switch (theorem) {
    case TheoremId::Thm3_1:
    case TheoremId::Cor3_1: ok = kind == OperatorKind::HLMaximal; break;
    case TheoremId::Thm3_2:
    case TheoremId::Cor3_2:
      ok = kind == OperatorKind::FractionalMaximal || kind == OperatorKind::RieszPotential;
      break;
    case TheoremId::Thm4_1:
    case TheoremId::Thm4_3:
    case TheoremId::Cor4_1: ok = kind == OperatorKind::CommutatorMb; break;
    case TheoremId::Thm4_2: ok = kind == OperatorKind::CommutatorMbl; break;
    case TheoremId::Thm4_4_commutator_fractional:
    case TheoremId::Cor4_2: ok = false; break;
  }
  if (!ok)
    throw std::invalid_argument("operator " + std::string(to_string(kind)) + " does not match theorem " +
                                std::string(to_string(theorem)));
}

ExponentParams to_exponent_params(TheoremId theorem, const ExponentPoint& e, int n, double l) {
  ExponentParams p;
  p.n = n;
  p.alpha = e.alpha;
  p.lambda = e.lambda;
  if (is_two_space(theorem)) {
    p.p1 = e.p1;
    p.p2 = e.p2;
    p.q1 = e.q1;
    p.q2 = e.q2;
    p.l = l;
  } else {
    p.p = e.p1;
    p.q = e.q1;
  }
  return p;
}

namespace {

std::string join_q(const std::vector<double>& q) {
  std::string s;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) s += ';';
    s += format_double(q[i]);
  }
  return s;
}

const std::vector<double>& target_q(TheoremId theorem, const ExponentPoint& e) {
  return is_two_space(theorem) ? e.q2 : e.q1;
}

double target_p(TheoremId theorem, const ExponentPoint& e) { return is_two_space(theorem) ? e.p2 : e.p1; }

ExperimentReport run_sweep(const OperatorRecipe& recipe, TheoremId theorem, const CorpusSpec& corpus,
                           const std::vector<ExponentPoint>& exponents, bool gate_coupling) {
  require_pairing(recipe.kind, theorem);
  if (exponents.empty()) throw std::invalid_argument("sweep: empty exponent grid");
  const int n = corpus.grid.n;

  std::vector<bool> admissible;
  for (const auto& e : exponents) {
    const auto v = check(theorem, to_exponent_params(theorem, e, n, recipe.l));
    if (gate_coupling)
      for (const auto& c : v.clauses)
        if (c.kind == ClauseKind::Coupling && !c.satisfied)
          throw std::invalid_argument("sweep: exponent point fails the coupling clause '" + c.id + "'");
    admissible.push_back(v.admissible);
  }

  const auto grid = make_grid(corpus.grid);
  const auto op = instantiate(recipe, grid.grid);
  op.validate(n);
  const auto support = grid.decomposition.support_mask();
  const int k_min = grid.decomposition.k_min();
  const KRange k0 = full_range(grid.decomposition);

  ExperimentReport report{recipe.kind, theorem, recipe.l, corpus.grid, {}, {}};
  const std::size_t ne = exponents.size();
  std::vector<SweepRow> rows(corpus.entries.size() * ne);

  parallel_for(corpus.entries.size(), [&](std::size_t fi) {
    const auto& entry = corpus.entries[fi];
    const auto f = generate(entry, grid);
    const auto tf = restrict(apply(op, f), support);
    for (std::size_t ei = 0; ei < ne; ++ei) {
      const auto& e = exponents[ei];
      const auto src_terms = annulus_norms(f, ExponentVector(e.q1), grid.decomposition);
      const auto dst_terms = annulus_norms(tf, ExponentVector(target_q(theorem, e)), grid.decomposition);
      const double src = herz_morrey_from_terms(src_terms, k_min, {e.alpha, e.p1, e.lambda, ExponentVector(e.q1), k0});
      const double dst = herz_morrey_from_terms(
          dst_terms, k_min, {e.alpha, target_p(theorem, e), e.lambda, ExponentVector(target_q(theorem, e)), k0});
      auto& row = rows[fi * ne + ei];
      row = SweepRow{entry.id(), ei, e, src, dst, std::nullopt, admissible[ei]};
      if (src > 0.0) row.ratio = dst / src;
    }
  });

  report.max_ratio.assign(ne, 0.0);
  for (const auto& row : rows)
    if (row.ratio) report.max_ratio[row.exponent_index] = std::max(report.max_ratio[row.exponent_index], *row.ratio);
  report.rows = std::move(rows);
  return report;
}

}  // namespace

ExperimentReport boundedness_sweep(const OperatorRecipe& op, TheoremId theorem, const CorpusSpec& corpus,
                                   const std::vector<ExponentPoint>& exponents) {
  return run_sweep(op, theorem, corpus, exponents, true);
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "# hmk-report v1\n";
  out << "function,operator,theorem,l,alpha,lambda,p1,p2,q1,q2,source_norm,target_norm,ratio,admissible,"
         "degenerate,n,k_min,k_max,samples_per_octave\n";
  const auto& g = report.grid;
  for (const auto& r : report.rows) {
    const auto& e = r.exponents;
    out << r.function_id << ',' << to_string(report.op) << ',' << to_string(report.theorem) << ','
        << format_double(report.l) << ',' << format_double(e.alpha) << ',' << format_double(e.lambda) << ','
        << format_double(e.p1) << ',' << format_double(target_p(report.theorem, e)) << ',' << join_q(e.q1) << ','
        << join_q(target_q(report.theorem, e)) << ',' << format_double(r.source_norm) << ','
        << format_double(r.target_norm) << ',' << (r.ratio ? format_double(*r.ratio) : std::string()) << ','
        << (r.admissible ? "true" : "false") << ',' << (r.ratio ? "false" : "true") << ',' << g.n << ','
        << g.k_min << ',' << g.k_max << ',' << g.samples_per_octave << '\n';
  }
  for (std::size_t i = 0; i < report.max_ratio.size(); ++i)
    out << "# max_ratio," << i << ',' << format_double(report.max_ratio[i]) << '\n';
  return out.str();
}

RefinementStudy refinement_study(const OperatorRecipe& op, TheoremId theorem, CorpusSpec corpus,
                                 const std::vector<ExponentPoint>& exponents, const std::vector<int>& resolutions) {
  RefinementStudy study;
  study.samples_per_octave = resolutions;
  for (int spo : resolutions) {
    corpus.grid.samples_per_octave = spo;
    study.max_ratio.push_back(boundedness_sweep(op, theorem, corpus, exponents).max_ratio);
  }
  study.relative_change.assign(exponents.size(), 0.0);
  for (std::size_t r = 1; r < study.max_ratio.size(); ++r)
    for (std::size_t e = 0; e < exponents.size(); ++e) {
      const double a = study.max_ratio[r - 1][e], b = study.max_ratio[r][e];
      const double change = a > 0.0 ? std::fabs(b - a) / a : (b > 0.0 ? INFINITY : 0.0);
      study.relative_change[e] = std::max(study.relative_change[e], change);
    }
  return study;
}

DivergenceReport divergence_probe(const OperatorRecipe& op, TheoremId theorem, const ExponentPoint& exponents,
                                  int n, int samples_per_octave, const std::vector<KRange>& k_ranges) {
  require_pairing(op.kind, theorem);
  const auto verdict = check(theorem, to_exponent_params(theorem, exponents, n, op.l));
  if (verdict.admissible) throw std::invalid_argument("divergence_probe: parameters are admissible");
  if (verdict.failed_clauses.size() != 1)
    throw std::invalid_argument("divergence_probe: parameters must fail exactly one clause");
  if (k_ranges.empty()) throw std::invalid_argument("divergence_probe: no k-ranges");

  DivergenceReport report{op.kind, theorem, exponents, verdict.failed_clauses, {}, {}};
  for (const auto& range : k_ranges) {
    if (range.empty()) throw std::invalid_argument("divergence_probe: empty k-range");
    CorpusSpec corpus{{n, range.lo, range.hi, samples_per_octave}, annulus_entries(range.lo, range.hi)};
    const auto sweep = run_sweep(op, theorem, corpus, {exponents}, false);
    ProbeRow row{range, 0.0, ""};
    for (const auto& r : sweep.rows)
      if (r.ratio && *r.ratio > row.max_ratio) {
        row.max_ratio = *r.ratio;
        row.argmax_function = r.function_id;
      }
    report.rows.push_back(row);
  }

  if (report.rows.size() < 2) {
    report.trend = "inconclusive";
  } else {
    bool growing = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i)
      growing = growing && report.rows[i].max_ratio >= kDivergenceGrowth * report.rows[i - 1].max_ratio;
    report.trend = growing ? "divergence observed" : "no divergence observed";
  }
  return report;
}

std::string probe_csv(const DivergenceReport& report) {
  std::ostringstream out;
  const auto& e = report.exponents;
  out << "# hmk-probe v1\n";
  out << "operator,theorem,alpha,lambda,p1,p2,q1,q2,failed_clause,k_min,k_max,width,max_ratio,argmax_function,"
         "trend\n";
  for (const auto& r : report.rows) {
    out << to_string(report.op) << ',' << to_string(report.theorem) << ',' << format_double(e.alpha) << ','
        << format_double(e.lambda) << ',' << format_double(e.p1) << ',' << format_double(target_p(report.theorem, e))
        << ',' << join_q(e.q1) << ',' << join_q(target_q(report.theorem, e)) << ",\"" << report.failed_clauses.front()
        << "\"," << r.k_range.lo << ',' << r.k_range.hi << ',' << (r.k_range.hi - r.k_range.lo) << ','
        << format_double(r.max_ratio) << ',' << r.argmax_function << ',' << report.trend << '\n';
  }
  return out.str();
}

namespace {

void record(InclusionCheck& check, double lhs, double rhs, double tolerance) {
  ++check.comparisons;
  const double scale = std::max(lhs, rhs);
  const double margin = scale > 0.0 ? (rhs - lhs) / scale : 0.0;
  if (check.comparisons == 1 || margin < check.worst_margin) check.worst_margin = margin;
  if (lhs > rhs * (1.0 + tolerance)) ++check.violations;
}

}  // namespace

std::vector<InclusionCheck> inclusion_suite(const CorpusSpec& corpus, const InclusionGrid& ig) {
  if (corpus.entries.empty()) throw std::invalid_argument("inclusion_suite: empty corpus");
  const auto grid = make_grid(corpus.grid);
  const auto& decomp = grid.decomposition;
  const int n = corpus.grid.n;
  const int k_min = decomp.k_min();
  const KRange k0 = full_range(decomp);

  const std::size_t nf = corpus.entries.size();
  std::vector<std::array<InclusionCheck, 3>> partial(nf);

  parallel_for(nf, [&](std::size_t fi) {
    auto& [cp, ca, cq] = partial[fi];
    const auto f = generate(corpus.entries[fi], grid);
    const auto span = support_span(f, decomp);
    std::vector<std::vector<double>> terms;
    for (double q : ig.qs) terms.push_back(annulus_norms(f, ExponentVector::constant(n, q), decomp));
    const auto norm = [&](std::size_t qi, double alpha, double p, double lambda) {
      return herz_morrey_from_terms(terms[qi], k_min,
                                    {alpha, p, lambda, ExponentVector::constant(n, ig.qs[qi]), k0});
    };

    for (std::size_t qi = 0; qi < ig.qs.size(); ++qi)
      for (double lambda : ig.lambdas)
        for (double alpha : ig.alphas) {
          for (std::size_t a = 0; a < ig.ps.size(); ++a)
            for (std::size_t b = a + 1; b < ig.ps.size(); ++b)
              record(cp, norm(qi, alpha, ig.ps[b], lambda), norm(qi, alpha, ig.ps[a], lambda), 0.0);

          for (double alpha2 : ig.alphas) {
            if (!(alpha2 < alpha)) continue;
            for (double p : ig.ps) {
              const double n1 = norm(qi, alpha, p, lambda), n2 = norm(qi, alpha2, p, lambda);
              if (span.lo > span.hi) {
                record(ca, n2, n1, 0.0);
                continue;
              }
              if (span.lo >= 0) record(ca, n2, n1, kInclusionTolerance);
              if (span.hi <= 0) record(ca, n1, n2, kInclusionTolerance);
            }
          }

          for (std::size_t q2 = qi + 1; q2 < ig.qs.size(); ++q2) {
            const double s = n * (1.0 / ig.qs[qi] - 1.0 / ig.qs[q2]);
            const double c = n == 1 ? 1.0 : std::exp2(s);
            for (double p : ig.ps)
              record(cq, norm(qi, alpha, p, lambda), c * norm(q2, alpha + s, p, lambda), kInclusionTolerance);
          }
        }
  });

  std::vector<InclusionCheck> out{{"p_monotone", 0, 0, 0.0}, {"alpha_monotone", 0, 0, 0.0}, {"q_shift", 0, 0, 0.0}};
  for (const auto& part : partial)
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& src = part[c];
      if (src.comparisons == 0) continue;
      auto& dst = out[c];
      dst.worst_margin = dst.comparisons == 0 ? src.worst_margin : std::min(dst.worst_margin, src.worst_margin);
      dst.comparisons += src.comparisons;
      dst.violations += src.violations;
    }
  return out;
}

}  // namespace hmk
