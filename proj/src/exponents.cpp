#include "hmk/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hmk/format.hpp"

namespace hmk {

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::Thm3_1: return "thm3_1";
    case TheoremId::Cor3_1: return "cor3_1";
    case TheoremId::Thm3_2: return "thm3_2";
    case TheoremId::Cor3_2: return "cor3_2";
    case TheoremId::Thm4_1: return "thm4_1";
    case TheoremId::Thm4_2: return "thm4_2";
    case TheoremId::Thm4_3: return "thm4_3";
    case TheoremId::Cor4_1: return "cor4_1";
    case TheoremId::Thm4_4_commutator_fractional: return "thm4_4";
    case TheoremId::Cor4_2: return "cor4_2";
  }
  return "unknown";
}

std::optional<TheoremId> parse_theorem(std::string_view name) {
  for (auto id : kAllTheorems)
    if (to_string(id) == name) return id;
  if (name == "thm4_4_commutator_fractional") return TheoremId::Thm4_4_commutator_fractional;
  return std::nullopt;
}

namespace {

enum class Family { SameSpace, Fractional, FractionalCommutator, MaximalCommutatorL };

Family family_of(TheoremId id) {
  switch (id) {
    case TheoremId::Thm3_2:
    case TheoremId::Cor3_2: return Family::Fractional;
    case TheoremId::Thm4_2: return Family::MaximalCommutatorL;
    case TheoremId::Thm4_4_commutator_fractional:
    case TheoremId::Cor4_2: return Family::FractionalCommutator;
    default: return Family::SameSpace;
  }
}

template <typename T>
const T& require(const std::optional<T>& v, const char* name) {
  if (!v) throw MissingParameter(std::string("missing parameter: ") + name);
  return *v;
}

double reciprocal_sum(const std::vector<double>& q, int n, const char* name) {
  if (static_cast<int>(q.size()) != n)
    throw std::invalid_argument(std::string(name) + " must have n entries");
  double s = 0.0;
  for (double v : q) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " entries must lie in (0, inf)");
    s += 1.0 / v;
  }
  return s;
}

struct ClauseBuilder {
  std::vector<ClauseResult>& out;
  void strict(std::string id, ClauseKind kind, double margin) {
    out.push_back({std::move(id), kind, margin > 0.0, margin});
  }
  void non_strict(std::string id, ClauseKind kind, double margin) {
    out.push_back({std::move(id), kind, margin >= 0.0, margin});
  }
  void equality(std::string id, double lhs, double rhs) {
    const double gap = std::fabs(lhs - rhs);
    out.push_back({std::move(id), ClauseKind::Coupling, gap <= kCouplingTolerance, -gap});
  }
};

}  // namespace

bool is_two_space(TheoremId id) { return family_of(id) != Family::SameSpace; }

double AdmissibilityVerdict::margin(std::string_view clause_id) const {
  for (const auto& c : clauses)
    if (c.id == clause_id) return c.margin;
  throw std::invalid_argument("no clause " + std::string(clause_id));
}

AdmissibilityVerdict check(TheoremId theorem, const ExponentParams& params) {
  const int n = params.n;
  if (n < 1) throw std::invalid_argument("check: n must be >= 1");
  const double nd = n;
  AdmissibilityVerdict v;
  v.theorem = theorem;
  ClauseBuilder c{v.clauses};

  const double alpha = require(params.alpha, "alpha");
  const double lambda = require(params.lambda, "lambda");
  const Family family = family_of(theorem);

  if (family == Family::SameSpace) {
    const double p = require(params.p, "p");
    const auto& q = require(params.q, "q");
    const double s = reciprocal_sum(q, n, "q");
    c.non_strict("0 <= lambda", ClauseKind::Range, lambda);
    c.strict("0 < p", ClauseKind::Range, p);
    double qm = INFINITY;
    for (double qi : q) qm = std::min(qm, qi - 1.0);
    c.strict("1 < q_i", ClauseKind::Range, qm);
    c.strict("lambda - sum 1/q_i < alpha", ClauseKind::Window, alpha - (lambda - s));
    c.strict("alpha < n(1 - (1/n) sum 1/q_i)", ClauseKind::Window, nd * (1.0 - s / nd) - alpha);
  } else {
    const double l = require(params.l, "l");
    const double p1 = require(params.p1, "p1");
    const double p2 = require(params.p2, "p2");
    const auto& q1 = require(params.q1, "q1");
    const auto& q2 = require(params.q2, "q2");
    const double s1 = reciprocal_sum(q1, n, "q1");
    const double s2 = reciprocal_sum(q2, n, "q2");

    if (family == Family::MaximalCommutatorL) {
      c.strict("1 < l", ClauseKind::Range, std::isfinite(l) ? l - 1.0 : -INFINITY);
    } else {
      c.strict("0 < l < n", ClauseKind::Range, std::min(l, nd - l));
    }
    c.non_strict("0 <= lambda", ClauseKind::Range, lambda);
    c.strict("0 < p1", ClauseKind::Range, p1);
    c.non_strict("p1 <= p2", ClauseKind::Range, p2 - p1);

    const double upper = family == Family::MaximalCommutatorL ? l : 1.0 / l;
    double qm = INFINITY;
    for (double qi : q1) qm = std::min({qm, qi - 1.0, upper - qi});
    c.strict(family == Family::MaximalCommutatorL ? "1 < q1_i < l" : "1 < q1_i < 1/l", ClauseKind::Range, qm);

    const double plain = s1 - s2;
    const double scaled = (s1 - s2) / nd;
    switch (family) {
      case Family::Fractional:
        c.equality("l = sum 1/q1_i - sum 1/q2_i", l, plain);
        if (std::fabs(l - plain) <= kCouplingTolerance && std::fabs(l - scaled) > kCouplingTolerance)
          v.diagnostics.push_back(
              "coupling holds as printed (no 1/n factor) but fails the (1/n)-scaled convention of thm4_4");
        else if (std::fabs(l - plain) > kCouplingTolerance && std::fabs(l - scaled) <= kCouplingTolerance)
          v.diagnostics.push_back(
              "coupling fails as printed but holds under the (1/n)-scaled convention of thm4_4");
        break;
      case Family::FractionalCommutator:
        c.equality("l = (1/n) sum 1/q1_i - (1/n) sum 1/q2_i", l, scaled);
        if (std::fabs(l - scaled) <= kCouplingTolerance && std::fabs(l - plain) > kCouplingTolerance)
          v.diagnostics.push_back(
              "coupling holds as printed (1/n factor) but fails the unscaled convention of thm3_2");
        else if (std::fabs(l - scaled) > kCouplingTolerance && std::fabs(l - plain) <= kCouplingTolerance)
          v.diagnostics.push_back("coupling fails as printed but holds under the unscaled convention of thm3_2");
        break;
      case Family::MaximalCommutatorL:
        c.equality("1/l = (1/n) sum 1/q1_i - (1/n) sum 1/q2_i", 1.0 / l, scaled);
        if (std::fabs(1.0 / l - scaled) <= kCouplingTolerance && std::fabs(1.0 / l - plain) > kCouplingTolerance)
          v.diagnostics.push_back(
              "coupling holds as printed (1/n factor) but fails the unscaled convention 1/l = sum 1/q1_i - sum 1/q2_i");
        else if (std::fabs(1.0 / l - scaled) > kCouplingTolerance && std::fabs(1.0 / l - plain) <= kCouplingTolerance)
          v.diagnostics.push_back(
              "coupling fails as printed but holds under the unscaled convention 1/l = sum 1/q1_i - sum 1/q2_i");
        break;
      case Family::SameSpace: break;
    }
    c.strict("lambda - sum 1/q2_i < alpha", ClauseKind::Window, alpha - (lambda - s2));
    c.strict("alpha < n - sum 1/q1_i", ClauseKind::Window, nd - s1 - alpha);
  }

  if (lambda == 0.0)
    v.caveats.push_back(
        "lambda = 0: the series argument needs lambda > 0; this case is the mixed Herz space result");
  for (const auto& cl : v.clauses)
    if (!cl.satisfied) v.failed_clauses.push_back(cl.id);
  v.admissible = v.failed_clauses.empty();
  return v;
}

nlohmann::json to_json(const AdmissibilityVerdict& v) {
  nlohmann::json j;
  j["theorem"] = std::string(to_string(v.theorem));
  j["admissible"] = v.admissible;
  j["failed_clauses"] = v.failed_clauses;
  auto clauses = nlohmann::json::array();
  for (const auto& c : v.clauses) {
    const char* kind = c.kind == ClauseKind::Range ? "range" : c.kind == ClauseKind::Coupling ? "coupling" : "window";
    clauses.push_back({{"clause", c.id}, {"kind", kind}, {"satisfied", c.satisfied}, {"margin", c.margin}});
  }
  j["clauses"] = clauses;
  j["caveats"] = v.caveats;
  j["diagnostics"] = v.diagnostics;
  return j;
}

std::string_view to_string(RegionAxis axis) {
  switch (axis) {
    case RegionAxis::Alpha: return "alpha";
    case RegionAxis::Lambda: return "lambda";
    case RegionAxis::P: return "p";
    case RegionAxis::P2: return "p2";
  }
  return "unknown";
}

std::optional<RegionAxis> parse_region_axis(std::string_view name) {
  if (name == "alpha") return RegionAxis::Alpha;
  if (name == "lambda") return RegionAxis::Lambda;
  if (name == "p" || name == "p1") return RegionAxis::P;
  if (name == "p2") return RegionAxis::P2;
  return std::nullopt;
}

namespace {

using Vec2 = std::array<double, 2>;

void set_axis(ExponentParams& params, TheoremId theorem, RegionAxis axis, double value) {
  switch (axis) {
    case RegionAxis::Alpha: params.alpha = value; return;
    case RegionAxis::Lambda: params.lambda = value; return;
    case RegionAxis::P:
      if (is_two_space(theorem))
        params.p1 = value;
      else
        params.p = value;
      return;
    case RegionAxis::P2:
      if (!is_two_space(theorem)) throw std::invalid_argument("region: p2 is not a parameter of this theorem");
      params.p2 = value;
      return;
  }
}

std::vector<double> margins_at(TheoremId theorem, ExponentParams params, RegionAxis u, RegionAxis v, double a,
                               double b) {
  set_axis(params, theorem, u, a);
  set_axis(params, theorem, v, b);
  const auto verdict = check(theorem, params);
  std::vector<double> m;
  for (const auto& c : verdict.clauses) m.push_back(c.margin);
  return m;
}

struct HalfPlane {
  double a, b, c;  // a u + b v + c >= 0
  double eval(const Vec2& p) const { return a * p[0] + b * p[1] + c; }
};

std::vector<Vec2> clip(const std::vector<Vec2>& poly, const HalfPlane& h) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& s = poly[i];
    const Vec2& e = poly[(i + 1) % poly.size()];
    const double fs = h.eval(s), fe = h.eval(e);
    if (fs >= 0.0) out.push_back(s);
    if ((fs >= 0.0) != (fe >= 0.0)) {
      const double t = fs / (fs - fe);
      out.push_back({s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])});
    }
  }
  return out;
}

double signed_area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

}  // namespace

std::vector<Polyline> region_boundary(TheoremId theorem, const ExponentParams& fixed, RegionAxis u, RegionAxis v,
                                      const Window& window) {
  if (u == v) throw std::invalid_argument("region: the two free axes must differ");
  if (!(window.u_lo < window.u_hi) || !(window.v_lo < window.v_hi))
    throw std::invalid_argument("region: empty window");

  const auto m00 = margins_at(theorem, fixed, u, v, 0.0, 0.0);
  const auto m10 = margins_at(theorem, fixed, u, v, 1.0, 0.0);
  const auto m01 = margins_at(theorem, fixed, u, v, 0.0, 1.0);
  const auto probe = margins_at(theorem, fixed, u, v, 2.5, -1.5);
  const auto template_verdict = [&] {
    ExponentParams p = fixed;
    set_axis(p, theorem, u, 0.0);
    set_axis(p, theorem, v, 0.0);
    return check(theorem, p);
  }();

  std::vector<Vec2> poly = {{window.u_lo, window.v_lo},
                            {window.u_hi, window.v_lo},
                            {window.u_hi, window.v_hi},
                            {window.u_lo, window.v_hi}};
  for (std::size_t i = 0; i < m00.size(); ++i) {
    const HalfPlane h{m10[i] - m00[i], m01[i] - m00[i], m00[i]};
    const double predicted = h.eval({2.5, -1.5});
    if (std::fabs(predicted - probe[i]) > 1e-9 * (1.0 + std::fabs(probe[i])))
      throw std::logic_error("region: clause is not affine in the free axes");
    if (h.a == 0.0 && h.b == 0.0) {
      if (!template_verdict.clauses[i].satisfied) return {};
      continue;
    }
    poly = clip(poly, h);
    if (poly.size() < 3) return {};
  }
  // Drop repeated vertices produced when a line passes through a corner.
  std::vector<Vec2> cleaned;
  const double scale = std::max({std::fabs(window.u_hi - window.u_lo), std::fabs(window.v_hi - window.v_lo)});
  for (const auto& p : poly)
    if (cleaned.empty() || std::hypot(p[0] - cleaned.back()[0], p[1] - cleaned.back()[1]) > 1e-14 * scale)
      cleaned.push_back(p);
  while (cleaned.size() > 1 &&
         std::hypot(cleaned.front()[0] - cleaned.back()[0], cleaned.front()[1] - cleaned.back()[1]) <= 1e-14 * scale)
    cleaned.pop_back();
  if (cleaned.size() < 3 || std::fabs(signed_area(cleaned)) <= 1e-14 * scale * scale) return {};
  if (signed_area(cleaned) < 0.0) std::reverse(cleaned.begin(), cleaned.end());
  return {Polyline{std::move(cleaned)}};
}

bool region_contains(const std::vector<Polyline>& region, double u, double v) {
  for (const auto& poly : region) {
    const auto& vs = poly.vertices;
    bool inside = vs.size() >= 3;
    for (std::size_t i = 0; i < vs.size() && inside; ++i) {
      const auto& a = vs[i];
      const auto& b = vs[(i + 1) % vs.size()];
      const double cross = (b[0] - a[0]) * (v - a[1]) - (b[1] - a[1]) * (u - a[0]);
      inside = cross > 0.0;
    }
    if (inside) return true;
  }
  return false;
}

std::string region_csv(const std::vector<Polyline>& region, RegionAxis u, RegionAxis v) {
  std::ostringstream out;
  out << "# hmk-region v1\n";
  out << "polyline,vertex," << to_string(u) << ',' << to_string(v) << '\n';
  for (std::size_t p = 0; p < region.size(); ++p)
    for (std::size_t i = 0; i < region[p].vertices.size(); ++i)
      out << p << ',' << i << ',' << format_double(region[p].vertices[i][0]) << ','
          << format_double(region[p].vertices[i][1]) << '\n';
  return out.str();
}

}  // namespace hmk
