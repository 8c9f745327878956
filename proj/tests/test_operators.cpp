#include <doctest.h>

#include <cmath>
#include <random>

#include "hmk/corpus.hpp"
#include "hmk/experiments.hpp"
#include "hmk/operators.hpp"
#include "oracles.hpp"

using namespace hmk;

namespace {

std::vector<double> dense_radii(int per_octave, int lo, int hi) {
  std::vector<double> r;
  for (int m = lo * per_octave; m <= hi * per_octave; ++m) r.push_back(std::exp2(static_cast<double>(m) / per_octave));
  return r;
}

GridFunction interval(const GridPtr& g, double a, double b) {
  return sample([=](const Point& x) { return x[0] > a && x[0] < b ? 1.0 : 0.0; }, g);
}

}  // namespace

TEST_CASE("operator names") {
  for (auto k : {OperatorKind::HLMaximal, OperatorKind::FractionalMaximal, OperatorKind::RieszPotential,
                 OperatorKind::CommutatorMb, OperatorKind::CommutatorMbl})
    CHECK(parse_operator_kind(to_string(k)) == k);
  CHECK(parse_operator_kind("hl") == OperatorKind::HLMaximal);
  CHECK_FALSE(parse_operator_kind("cz").has_value());
}

TEST_CASE("hl maximal of a constant is the constant where balls stay inside") {
  // Octave [2, 4) has cells of width 1/4 at spo = 8; balls of radius (2m+1)/8
  // centered on a cell center cover whole cells exactly.
  const auto g = make_dyadic_grid(1, -2, 3, 8);
  const auto f = sample([](const Point&) { return 2.5; }, g.grid);
  const std::vector<double> radii{0.125, 0.375};
  const auto mf = hl_maximal(f, radii);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = std::fabs(g.grid->point(i)[0]);
    if (x > 2.375 && x < 3.625) CHECK(mf[i] == 2.5);
  }
}

TEST_CASE("hl maximal of an interval indicator far away") {
  const auto g = make_dyadic_grid(1, -3, 3, 32);
  const auto f = interval(g.grid, -1.0, 1.0);
  const double v = hl_maximal_at(f, {3.0, 0, 0}, dense_radii(64, -4, 4));
  CHECK(v == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("hl maximal dominates |f| at grid points") {
  const auto g = make_dyadic_grid(1, -2, 2, 8);
  const auto f = generate(parse_corpus_entry("random:6"), g);
  const auto mf = hl_maximal(f, default_radius_set(*g.grid, 4));
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(mf[i] >= std::fabs(f[i]));
}

TEST_CASE("hl maximal equals the double-loop oracle on small grids") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t cells = 2 + rng() % 63;
    std::vector<double> pts, widths;
    double edge = -static_cast<double>(cells) / 8.0;
    for (std::size_t i = 0; i < cells; ++i) {
      const double w = std::ldexp(1.0, -static_cast<int>(rng() % 4));
      pts.push_back(edge + 0.5 * w);
      widths.push_back(w);
      edge += w;
    }
    const auto grid = std::make_shared<const TensorGrid>(std::vector<AxisGrid>{AxisGrid(pts, widths)});
    std::vector<double> v(cells);
    for (auto& x : v) x = static_cast<double>(static_cast<int>(rng() % 17) - 8) / 8.0;
    const GridFunction f(grid, v);
    auto radii = default_radius_set(*grid, 4);
    radii.push_back(0.3 + static_cast<double>(rng() % 100) / 37.0);
    const auto got = hl_maximal(f, radii);
    const auto want = oracle::hl_1d(f, radii);
    for (std::size_t i = 0; i < cells; ++i) CHECK(got[i] == want[i]);
  }
}

TEST_CASE("hl maximal rejects an empty radius set") {
  const auto g = make_dyadic_grid(1, 0, 1, 4);
  CHECK_THROWS(hl_maximal(generate(parse_corpus_entry("annulus:0"), g), std::vector<double>{}));
}

TEST_CASE("fractional maximal") {
  const auto g = make_dyadic_grid(1, -3, 3, 16);
  const auto radii = default_radius_set(*g.grid, 4);
  const auto f = generate(parse_corpus_entry("random:4"), g);
  const auto a = hl_maximal(f, radii), b = fractional_maximal(f, 0.0, radii);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(a[i] == b[i]);
  const auto z = fractional_maximal(GridFunction::zeros(g.grid), 0.5, radii);
  for (double v : z.values()) CHECK(v == 0.0);
  const auto ind = interval(g.grid, -1.0, 1.0);
  CHECK(fractional_maximal_at(ind, 0.5, {0, 0, 0}, dense_radii(64, -4, 4)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-2));
  CHECK_THROWS(fractional_maximal(f, 1.0, radii));
  CHECK_THROWS(fractional_maximal(f, -0.1, radii));
}

TEST_CASE("riesz potential") {
  const auto g = make_dyadic_grid(1, -5, 1, 32);
  const auto f = interval(g.grid, 0.0, 1.0);
  CHECK(riesz_potential_at(f, 0.5, {2, 0, 0}) == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(0.01));
  const auto r1 = riesz_potential(f, 0.5), r2 = riesz_potential(2.0 * f, 0.5);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(r2[i] == 2.0 * r1[i]);
  const auto z = riesz_potential(GridFunction::zeros(g.grid), 0.5);
  for (double v : z.values()) CHECK(v == 0.0);
  CHECK_THROWS(riesz_potential(f, 0.0));
  CHECK_THROWS(riesz_potential(f, 1.0));
}

TEST_CASE("riesz potential inside the support converges") {
  // I_l chi_[0,1] at x = 1/2 is 2 (1/2)^l / l.
  const double want = 2.0 * std::pow(0.5, 0.5) / 0.5;
  double prev = 0.0;
  for (int spo : {16, 64}) {
    const auto g = make_dyadic_grid(1, -5, 1, spo);
    const double got = riesz_potential_at(interval(g.grid, 0.0, 1.0), 0.5, {0.5, 0, 0});
    CHECK(got == doctest::Approx(want).epsilon(0.02));
    CHECK(std::fabs(got - want) <= std::fabs(prev - want) + 1e-12 + (prev == 0.0 ? 1e9 : 0.0));
    prev = got;
  }
}

TEST_CASE("riesz self-cell integral") {
  // 1-D closed form
  CHECK(riesz_cell_integral(1, 0.5, {0.1, 0, 0}, {0, 0, 0}, {0.5, 0, 0}) ==
        doctest::Approx((std::sqrt(0.6) + std::sqrt(0.4)) / 0.5).epsilon(1e-14));
  // 2-D: integral of |y|^{-1} over the unit square centered at the origin is
  // 4 log(1 + sqrt 2)
  CHECK(riesz_cell_integral(2, 1.0, {0, 0, 0}, {0, 0, 0}, {0.5, 0.5, 0}) ==
        doctest::Approx(4.0 * std::log(1.0 + std::sqrt(2.0))).epsilon(0.01));
  // 3-D: integral of |y|^{-2} over the cube [-1/2,1/2]^3 is about 7.6741
  CHECK(riesz_cell_integral(3, 1.0, {0, 0, 0}, {0, 0, 0}, {0.5, 0.5, 0.5}) == doctest::Approx(7.6741).epsilon(0.01));
}

TEST_CASE("riesz kernel symmetry about a single cell") {
  std::vector<double> pts, widths;
  for (int i = 0; i < 64; ++i) {
    pts.push_back(-8.0 + 0.25 * i + 0.125);
    widths.push_back(0.25);
  }
  const auto grid = std::make_shared<const TensorGrid>(std::vector<AxisGrid>{AxisGrid(pts, widths)});
  std::vector<double> v(64, 0.0);
  v[30] = 1.0;
  const GridFunction f(grid, v);
  const auto out = riesz_potential(f, 0.5);
  for (int d = 1; d < 30; ++d) CHECK(std::fabs(out[30 + d] - out[30 - d]) <= 1e-10);
}

TEST_CASE("bmo seminorm") {
  const auto g = make_dyadic_grid(1, -3, 3, 16);
  const auto cube_family = dyadic_cube_family(*g.grid, 2);
  CHECK_FALSE(cube_family.empty());
  CHECK(bmo_seminorm(sample([](const Point&) { return 4.0; }, g.grid), cube_family) == 0.0);
  const auto step = sample([](const Point& x) { return x[0] >= 0.0 ? 1.0 : 0.0; }, g.grid);
  const std::vector<Cube> sym{{{0, 0, 0}, 1.0}};
  CHECK(bmo_seminorm(step, sym) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS(bmo_seminorm(step, std::vector<Cube>{}));
  CHECK_THROWS(bmo_seminorm(step, std::vector<Cube>{{{0, 0, 0}, 100.0}}));
}

TEST_CASE("bmo estimate of log|x| is stable under refinement of the cube family") {
  const auto g = make_dyadic_grid(1, -6, 6, 16);
  const auto b = sample([](const Point& x) { return std::log(euclidean_norm(x)); }, g.grid);
  const double coarse = bmo_seminorm(b, origin_cube_family(*g.grid, 2));
  const double fine = bmo_seminorm(b, origin_cube_family(*g.grid, 8));
  CHECK(std::isfinite(coarse));
  CHECK(fine == doctest::Approx(coarse).epsilon(0.1));
  const auto sym = log_symbol(g.grid);
  CHECK(sym->seminorm_estimate > 0.0);
  CHECK(std::isfinite(sym->seminorm_estimate));
}

TEST_CASE("commutators") {
  const auto g = make_dyadic_grid(1, -3, 3, 16);
  const auto radii = default_radius_set(*g.grid, 4);
  const auto f = generate(parse_corpus_entry("random:2"), g);
  const BmoSymbol constant{sample([](const Point&) { return -1.5; }, g.grid), nullptr, 0.0};
  const auto c1 = commutator_mb(f, constant, radii), c2 = commutator_mbl(f, constant, 3.0, radii);
  for (double v : c1.values()) CHECK(v == 0.0);
  for (double v : c2.values()) CHECK(v == 0.0);
  const auto b = log_symbol(g.grid);
  const auto z1 = commutator_mb(GridFunction::zeros(g.grid), *b, radii);
  const auto z2 = commutator_mbl(GridFunction::zeros(g.grid), *b, 2.0, radii);
  for (double v : z1.values()) CHECK(v == 0.0);
  for (double v : z2.values()) CHECK(v == 0.0);
  CHECK_THROWS(commutator_mbl(f, *b, 1.0, radii));
  const auto other = make_dyadic_grid(1, -2, 2, 8);
  CHECK_THROWS(commutator_mb(generate(parse_corpus_entry("annulus:0"), other), *b, radii));
}

TEST_CASE("commutator M_b at x = 4 against a brute-force radius scan") {
  const auto g = make_dyadic_grid(1, -3, 3, 32);
  const auto f = generate(parse_corpus_entry("annulus:0"), g);
  const auto b = log_symbol(g.grid);
  const auto radii = dense_radii(32, -3, 4);
  const Point x{4, 0, 0};
  double best = 0.0;
  for (double r : radii) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double y = g.grid->point(i)[0];
      if (f[i] != 0.0 && std::fabs(y - 4.0) <= r) s += std::fabs(std::log(4.0) - std::log(std::fabs(y))) * g.grid->cell_volume(i);
    }
    best = std::max(best, s / (2.0 * r));
  }
  CHECK(commutator_mb_at(f, *b, x, radii) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("M_b^l tends to M_b as l grows") {
  const auto g = make_dyadic_grid(1, -3, 3, 16);
  const auto radii = default_radius_set(*g.grid, 4);
  const auto b = log_symbol(g.grid);
  for (const char* e : {"annulus:0", "random:3"}) {
    const auto f = generate(parse_corpus_entry(e), g);
    const auto a = commutator_mb(f, *b, radii), c = commutator_mbl(f, *b, 1e3, radii);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(c[i] == doctest::Approx(a[i]).epsilon(0.01));
  }
}

TEST_CASE("sublinearity, positivity and monotonicity for every operator") {
  const auto g = make_dyadic_grid(1, -2, 2, 8);
  for (auto kind : {OperatorKind::HLMaximal, OperatorKind::FractionalMaximal, OperatorKind::RieszPotential,
                    OperatorKind::CommutatorMb, OperatorKind::CommutatorMbl}) {
    const auto op = instantiate({kind, kind == OperatorKind::CommutatorMbl ? 3.0 : 0.5, 4}, g.grid);
    for (int s = 1; s <= 4; ++s) {
      const auto f = generate(parse_corpus_entry("random:" + std::to_string(s)), g);
      const auto h = generate(parse_corpus_entry("random:" + std::to_string(s + 20)), g);
      const auto tf = apply(op, f), th = apply(op, h), tsum = apply(op, f + h);
      for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(tf[i] >= 0.0);
        CHECK(tsum[i] >= tf[i] * (1 - 1e-12));
        if (op.is_maximal_type()) CHECK(tsum[i] <= (tf[i] + th[i]) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("M_b is dominated by 2 sup|b| M f for bounded b") {
  const auto g = make_dyadic_grid(1, -2, 2, 8);
  const auto radii = default_radius_set(*g.grid, 4);
  const BmoSymbol b{sample([](const Point& x) { return std::sin(3.0 * x[0]); }, g.grid), nullptr, 0.0};
  double bmax = 0.0;
  for (double v : b.b.values()) bmax = std::max(bmax, std::fabs(v));
  for (int s = 1; s <= 5; ++s) {
    const auto f = generate(parse_corpus_entry("random:" + std::to_string(s)), g);
    const auto mb = commutator_mb(f, b, radii), m = hl_maximal(f, radii);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(mb[i] <= 2.0 * bmax * m[i] * (1 + 1e-12));
  }
}

TEST_CASE("operators in two dimensions") {
  const auto g = make_dyadic_grid(2, -1, 1, 4);
  const auto f = generate(parse_corpus_entry("annulus:0"), g);
  const auto radii = default_radius_set(*g.grid, 4);
  const auto mf = hl_maximal(f, radii);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(mf[i] >= f[i]);
  const auto rf = riesz_potential(f, 1.0);
  for (double v : rf.values()) CHECK(v > 0.0);
  CHECK(ball_volume(2, 1.0) == doctest::Approx(M_PI));
  CHECK(ball_volume(3, 2.0) == doctest::Approx(32.0 * M_PI / 3.0));
}

TEST_CASE("size conditions") {
  const auto g = make_dyadic_grid(1, -4, 5, 16);
  const auto f = generate(parse_corpus_entry("annulus:0"), g);
  const std::vector<Point> far{{4, 0, 0}, {-8, 0, 0}, {16, 0, 0}};
  const auto hl = verify_size_condition(OperatorSpec::hl_maximal(dense_radii(16, -6, 6)), 0, f, far);
  REQUIRE(hl.far_constant.has_value());
  CHECK_FALSE(hl.near_constant.has_value());
  for (const auto& p : hl.probes) CHECK(p.scaled == doctest::Approx(*hl.far_constant).epsilon(0.2));

  const auto riesz = verify_size_condition(OperatorSpec::riesz_potential(0.5), 0, f, far);
  CHECK(*riesz.far_constant <= std::exp2(1.0 - 0.5));

  const std::vector<Point> near{{0, 0, 0}, {0.125, 0, 0}, {-0.25, 0, 0}};
  const auto rn = verify_size_condition(OperatorSpec::riesz_potential(0.5), 0, f, near);
  CHECK(rn.near_constant.has_value());
  CHECK(std::isfinite(rn.constant()));

  CHECK_THROWS(verify_size_condition(OperatorSpec::riesz_potential(0.5), 0, f, std::vector<Point>{{1.5, 0, 0}}));
  CHECK_THROWS(verify_size_condition(OperatorSpec::riesz_potential(0.5), 1, f, far));
  const auto zero = verify_size_condition(OperatorSpec::riesz_potential(0.5), 0, GridFunction::zeros(g.grid), far);
  CHECK(zero.degenerate);
  CHECK(zero.constant() == 0.0);
}

TEST_CASE("operator spec validation") {
  CHECK_THROWS(OperatorSpec::riesz_potential(1.5).validate(1));
  CHECK_NOTHROW(OperatorSpec::riesz_potential(1.5).validate(2));
  CHECK_THROWS(OperatorSpec::commutator_mb(nullptr, {1.0}).validate(1));
  CHECK_THROWS(OperatorSpec::hl_maximal({}).validate(1));
  CHECK(OperatorSpec::commutator_mbl(4.0, nullptr, {1.0}).decay_order(2) == 0.5);
  CHECK(OperatorSpec::fractional_maximal(0.3, {1.0}).decay_order(1) == 0.3);
}
