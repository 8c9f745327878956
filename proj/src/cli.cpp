#include "hmk/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "hmk/corpus.hpp"
#include "hmk/experiments.hpp"
#include "hmk/exponents.hpp"
#include "hmk/format.hpp"
#include "hmk/grid_io.hpp"
#include "hmk/norms.hpp"
#include "hmk/operators.hpp"
#include "hmk/suite.hpp"

namespace hmk {

namespace {

struct GridOptions {
  GridParams params;
  void add(CLI::App* app) {
    app->add_option("--n", params.n, "dimension (1..3)")->capture_default_str();
    app->add_option("--k-min", params.k_min, "lowest annulus index")->capture_default_str();
    app->add_option("--k-max", params.k_max, "highest annulus index")->capture_default_str();
    app->add_option("--spo", params.samples_per_octave, "samples per octave")->capture_default_str();
  }
};

std::vector<double> broadcast(std::vector<double> q, int n, const char* name) {
  if (q.size() == 1 && n > 1) q.assign(static_cast<std::size_t>(n), q.front());
  if (static_cast<int>(q.size()) != n)
    throw std::invalid_argument(std::string(name) + " needs 1 or n entries");
  return q;
}

std::optional<std::vector<double>> broadcast(const std::vector<double>& q, int n, const char* name, bool given) {
  if (!given) return std::nullopt;
  return broadcast(q, n, name);
}

OperatorKind operator_kind(const std::string& name) {
  const auto k = parse_operator_kind(name);
  if (!k) throw std::invalid_argument("unknown operator '" + name + "'");
  return *k;
}

TheoremId theorem_id(const std::string& name) {
  const auto t = parse_theorem(name);
  if (!t) throw std::invalid_argument("unknown theorem '" + name + "'");
  return *t;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path);
  file << text;
}

// Source of a single function: a corpus entry on a dyadic grid, or a CSV file.
struct FunctionSource {
  std::string entry;
  std::string input;
  void add(CLI::App* app) {
    auto* f = app->add_option("--f", entry, "corpus entry, e.g. annulus:0");
    auto* i = app->add_option("--input", input, "GridFunction CSV file");
    f->excludes(i);
  }
  // Returns the function and the decomposition over the requested k range.
  std::pair<GridFunction, DyadicDecomposition> load(const GridParams& params) const {
    if (!input.empty()) {
      std::ifstream file(input, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open " + input);
      auto f = read_csv(file);
      DyadicDecomposition d(f.grid(), params.k_min, params.k_max);
      return {std::move(f), std::move(d)};
    }
    if (entry.empty()) throw std::invalid_argument("one of --f or --input is required");
    const auto grid = make_grid(params);
    return {generate(parse_corpus_entry(entry), grid), grid.decomposition};
  }
};

struct ExponentOptions {
  std::vector<double> alpha{0.0};
  std::vector<double> lambda{0.0};
  double p1 = 1.0;
  std::optional<double> p2;
  double l = 0.0;
  std::vector<double> q1;
  std::vector<double> q2;
  CLI::Option* q2_opt = nullptr;

  void add(CLI::App* app, bool lists) {
    if (lists) {
      app->add_option("--alpha", alpha, "alpha values (comma separated)")->delimiter(',')->capture_default_str();
      app->add_option("--lambda", lambda, "lambda values (comma separated)")->delimiter(',')->capture_default_str();
    } else {
      app->add_option("--alpha", alpha.front(), "alpha")->capture_default_str();
      app->add_option("--lambda", lambda.front(), "lambda")->capture_default_str();
    }
    app->add_option("--p,--p1", p1, "source p")->capture_default_str();
    app->add_option("--p2", p2, "target p (defaults to p1)");
    app->add_option("--l", l, "fractional order");
    app->add_option("--q,--q1", q1, "source exponent vector")->delimiter(',')->required();
    q2_opt = app->add_option("--q2", q2, "target exponent vector (two-space theorems)")->delimiter(',');
  }

  std::vector<ExponentPoint> points(TheoremId theorem, int n) const {
    const auto src = broadcast(q1, n, "--q");
    std::vector<double> dst = src;
    if (is_two_space(theorem)) {
      if (q2.empty()) throw MissingParameter("missing parameter: q2");
      dst = broadcast(q2, n, "--q2");
    }
    std::vector<ExponentPoint> out;
    for (double a : alpha)
      for (double lam : lambda) out.push_back({a, lam, p1, p2.value_or(p1), src, dst});
    return out;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Herz-Morrey norms, operators and exponent checks on dyadic grids", "hmk"};
  app.set_config("--config", "", "TOML/INI file mirroring the command-line flags");
  app.require_subcommand(1);

  std::function<int()> action;

  // norm
  auto* norm = app.add_subcommand("norm", "norm of one function");
  GridOptions norm_grid;
  norm_grid.add(norm);
  FunctionSource norm_src;
  norm_src.add(norm);
  std::string norm_kind = "herz_morrey";
  double n_alpha = 0.0, n_p = 1.0, n_lambda = 0.0;
  std::vector<double> n_q;
  std::vector<double> n_weights;
  std::vector<double> n_radii;
  norm->add_option("--kind", norm_kind, "herz_morrey, herz, lebesgue, morrey or weighted")
      ->check(CLI::IsMember({"herz_morrey", "herz", "lebesgue", "morrey", "weighted"}))
      ->capture_default_str();
  norm->add_option("--alpha", n_alpha)->capture_default_str();
  norm->add_option("--p", n_p)->capture_default_str();
  norm->add_option("--lambda", n_lambda)->capture_default_str();
  norm->add_option("--q", n_q, "exponent vector")->delimiter(',')->required();
  norm->add_option("--weights", n_weights, "alpha_i of the weighted norm")->delimiter(',');
  norm->add_option("--radii", n_radii, "Morrey radii (default: dyadic radii)")->delimiter(',');
  norm->callback([&] {
    action = [&] {
      auto [f, decomp] = norm_src.load(norm_grid.params);
      const ExponentVector q(broadcast(n_q, f.dim(), "--q"));
      double v = 0.0;
      if (norm_kind == "herz_morrey") {
        v = herz_morrey_norm(f, {n_alpha, n_p, n_lambda, q, full_range(decomp)}, decomp);
      } else if (norm_kind == "herz") {
        v = herz_norm(f, n_alpha, n_p, q, decomp);
      } else if (norm_kind == "lebesgue") {
        v = mixed_lebesgue_norm(f, q);
      } else if (norm_kind == "morrey") {
        const auto radii = n_radii.empty() ? dyadic_radii(decomp) : n_radii;
        v = mixed_morrey_norm(f, n_lambda, q, radii);
      } else {
        v = weighted_mixed_norm(f, q, broadcast(n_weights.empty() ? std::vector<double>{0.0} : n_weights,
                                                f.dim(), "--weights"));
      }
      out << format_double(v) << '\n';
      return 0;
    };
  });

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "apply an operator and write the result as CSV");
  GridOptions apply_grid;
  apply_grid.add(apply_cmd);
  FunctionSource apply_src;
  apply_src.add(apply_cmd);
  std::string a_op = "hl";
  double a_l = 0.0;
  int a_rpo = 4;
  std::string a_out;
  apply_cmd->add_option("--op", a_op, "hl, fractional, riesz, mb or mbl")->capture_default_str();
  apply_cmd->add_option("--l", a_l, "fractional order");
  apply_cmd->add_option("--radii-per-octave", a_rpo)->capture_default_str();
  apply_cmd->add_option("--out", a_out, "output file (default stdout)");
  apply_cmd->callback([&] {
    action = [&] {
      auto [f, decomp] = apply_src.load(apply_grid.params);
      const auto op = instantiate({operator_kind(a_op), a_l, a_rpo}, f.grid_ptr());
      std::ostringstream s;
      write_csv(apply(op, f), s);
      emit(a_out, s.str(), out);
      return 0;
    };
  });

  // check
  auto* check_cmd = app.add_subcommand("check", "admissibility verdict as JSON");
  std::string c_theorem;
  int c_n = 1;
  std::optional<double> c_alpha, c_lambda, c_p, c_p1, c_p2, c_l;
  std::vector<double> c_q, c_q1, c_q2;
  check_cmd->add_option("--theorem", c_theorem)->required();
  check_cmd->add_option("--n", c_n)->capture_default_str();
  check_cmd->add_option("--alpha", c_alpha);
  check_cmd->add_option("--lambda", c_lambda);
  check_cmd->add_option("--p", c_p, "same-space p (default 1)");
  check_cmd->add_option("--p1", c_p1);
  check_cmd->add_option("--p2", c_p2);
  check_cmd->add_option("--l", c_l);
  auto* cq = check_cmd->add_option("--q", c_q)->delimiter(',');
  auto* cq1 = check_cmd->add_option("--q1", c_q1)->delimiter(',');
  auto* cq2 = check_cmd->add_option("--q2", c_q2)->delimiter(',');
  check_cmd->callback([&] {
    action = [&] {
      const auto th = theorem_id(c_theorem);
      ExponentParams p;
      p.n = c_n;
      p.alpha = c_alpha;
      p.lambda = c_lambda;
      p.p = c_p ? c_p : std::optional<double>(1.0);
      p.p1 = c_p1;
      p.p2 = c_p2;
      p.l = c_l;
      p.q = broadcast(c_q, c_n, "--q", cq->count() > 0);
      p.q1 = broadcast(c_q1, c_n, "--q1", cq1->count() > 0);
      p.q2 = broadcast(c_q2, c_n, "--q2", cq2->count() > 0);
      out << to_json(check(th, p)).dump(2) << '\n';
      return 0;
    };
  });

  // region
  auto* region_cmd = app.add_subcommand("region", "admissible region boundary as CSV");
  std::string r_theorem, r_u = "alpha", r_v = "lambda", r_out;
  int r_n = 1;
  double r_alpha = 0.0, r_lambda = 0.0, r_p = 1.0, r_p2 = 1.0, r_l = 0.0;
  std::vector<double> r_q, r_q2;
  Window window{-1.0, 1.0, 0.0, 1.0};
  region_cmd->add_option("--theorem", r_theorem)->required();
  region_cmd->add_option("--u", r_u, "first free axis: alpha, lambda, p, p2")->capture_default_str();
  region_cmd->add_option("--v", r_v, "second free axis")->capture_default_str();
  region_cmd->add_option("--u-lo", window.u_lo)->capture_default_str();
  region_cmd->add_option("--u-hi", window.u_hi)->capture_default_str();
  region_cmd->add_option("--v-lo", window.v_lo)->capture_default_str();
  region_cmd->add_option("--v-hi", window.v_hi)->capture_default_str();
  region_cmd->add_option("--n", r_n)->capture_default_str();
  region_cmd->add_option("--alpha", r_alpha, "fixed alpha when not free")->capture_default_str();
  region_cmd->add_option("--lambda", r_lambda, "fixed lambda when not free")->capture_default_str();
  region_cmd->add_option("--p,--p1", r_p)->capture_default_str();
  region_cmd->add_option("--p2", r_p2)->capture_default_str();
  region_cmd->add_option("--l", r_l);
  region_cmd->add_option("--q,--q1", r_q)->delimiter(',')->required();
  region_cmd->add_option("--q2", r_q2)->delimiter(',');
  region_cmd->add_option("--out", r_out, "output file (default stdout)");
  region_cmd->callback([&] {
    action = [&] {
      const auto th = theorem_id(r_theorem);
      const auto u = parse_region_axis(r_u), v = parse_region_axis(r_v);
      if (!u || !v) throw std::invalid_argument("unknown region axis");
      ExponentParams p;
      p.n = r_n;
      p.alpha = r_alpha;
      p.lambda = r_lambda;
      if (is_two_space(th)) {
        p.p1 = r_p;
        p.p2 = r_p2;
        p.l = r_l;
        p.q1 = broadcast(r_q, r_n, "--q");
        if (r_q2.empty()) throw MissingParameter("missing parameter: q2");
        p.q2 = broadcast(r_q2, r_n, "--q2");
      } else {
        p.p = r_p;
        p.q = broadcast(r_q, r_n, "--q");
      }
      const auto region = region_boundary(th, p, *u, *v, window);
      if (region.empty()) err << "region empty over window\n";
      emit(r_out, region_csv(region, *u, *v), out);
      return 0;
    };
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "boundedness sweep as CSV");
  GridOptions sweep_grid;
  sweep_grid.add(sweep_cmd);
  ExponentOptions sweep_exp;
  sweep_exp.add(sweep_cmd, true);
  std::string s_op = "hl", s_theorem = "thm3_1", s_out;
  int s_rpo = 4, s_random = 20;
  std::vector<std::string> s_entries;
  sweep_cmd->add_option("--op", s_op)->capture_default_str();
  sweep_cmd->add_option("--theorem", s_theorem)->capture_default_str();
  sweep_cmd->add_option("--radii-per-octave", s_rpo)->capture_default_str();
  sweep_cmd->add_option("--f", s_entries, "corpus entries (default: the default corpus)")->delimiter(',');
  sweep_cmd->add_option("--random-count", s_random, "random step functions in the default corpus")
      ->capture_default_str();
  sweep_cmd->add_option("--out", s_out, "output file (default stdout)");
  sweep_cmd->callback([&] {
    action = [&] {
      const auto th = theorem_id(s_theorem);
      CorpusSpec corpus = default_corpus(sweep_grid.params, s_random);
      if (!s_entries.empty()) {
        corpus.entries.clear();
        for (const auto& e : s_entries) corpus.entries.push_back(parse_corpus_entry(e));
      }
      const auto report = boundedness_sweep({operator_kind(s_op), sweep_exp.l, s_rpo}, th, corpus,
                                            sweep_exp.points(th, sweep_grid.params.n));
      emit(s_out, report_csv(report), out);
      return 0;
    };
  });

  // probe
  auto* probe_cmd = app.add_subcommand("probe", "divergence probe as CSV");
  ExponentOptions probe_exp;
  probe_exp.add(probe_cmd, false);
  std::string pr_op = "hl", pr_theorem = "thm3_1", pr_out;
  int pr_n = 1, pr_spo = 16, pr_rpo = 4;
  std::vector<int> widths{6, 12};
  probe_cmd->add_option("--op", pr_op)->capture_default_str();
  probe_cmd->add_option("--theorem", pr_theorem)->capture_default_str();
  probe_cmd->add_option("--n", pr_n)->capture_default_str();
  probe_cmd->add_option("--spo", pr_spo)->capture_default_str();
  probe_cmd->add_option("--radii-per-octave", pr_rpo)->capture_default_str();
  probe_cmd->add_option("--widths", widths, "k-range widths, centered on 0")->delimiter(',')->capture_default_str();
  probe_cmd->add_option("--out", pr_out, "output file (default stdout)");
  probe_cmd->callback([&] {
    action = [&] {
      const auto th = theorem_id(pr_theorem);
      std::vector<KRange> ranges;
      for (int w : widths) {
        if (w < 0) throw std::invalid_argument("--widths must be non-negative");
        ranges.push_back({-(w / 2), w - w / 2});
      }
      const auto report = divergence_probe({operator_kind(pr_op), probe_exp.l, pr_rpo}, th,
                                           probe_exp.points(th, pr_n).front(), pr_n, pr_spo, ranges);
      emit(pr_out, probe_csv(report), out);
      return 0;
    };
  });

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "run every invariant check");
  suite_cmd->callback([&] {
    action = [&] { return run_suite(out) ? 0 : 3; };
  });

  std::vector<const char*> argv{"hmk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    return action ? action() : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "computation error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hmk
