#include "hmk/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "hmk/format.hpp"

namespace hmk {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int parse_int(std::string_view s) {
  const double v = parse_double(s);
  if (v != std::floor(v) || std::fabs(v) > 1e9) throw std::invalid_argument("expected an integer: " + std::string(s));
  return static_cast<int>(v);
}

std::uint64_t parse_seed(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty seed");
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed seed: " + std::string(s));
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

// Top 53 bits as a double in [0, 1); identical on every platform, unlike
// std::uniform_real_distribution.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require_annulus(const DyadicGrid& grid, int j) {
  const auto& d = grid.decomposition;
  if (j < d.k_min() || j > d.k_max())
    throw std::invalid_argument("corpus: annulus " + std::to_string(j) + " lies outside the grid range [" +
                                std::to_string(d.k_min()) + ", " + std::to_string(d.k_max()) + "]");
}

std::size_t orthant(const Point& x, int n) {
  std::size_t o = 0;
  for (int i = 0; i < n; ++i)
    if (x[static_cast<std::size_t>(i)] < 0.0) o |= std::size_t{1} << i;
  return o;
}

}  // namespace

std::string CorpusEntry::id() const {
  switch (family) {
    case CorpusFamily::AnnulusIndicator: return "annulus:" + std::to_string(j1);
    case CorpusFamily::AnnulusSum: return "annulus_sum:" + std::to_string(j1) + ":" + std::to_string(j2);
    case CorpusFamily::PowerTail: return "power_tail:" + format_double(beta) + ":" + format_double(cutoff);
    case CorpusFamily::Gaussian: return "gaussian:" + format_double(sigma);
    case CorpusFamily::RandomDyadic: return "random:" + std::to_string(seed);
    case CorpusFamily::Zero: return "zero";
  }
  return "unknown";
}

CorpusEntry parse_corpus_entry(std::string_view text) {
  const auto parts = split(text, ':');
  const auto arity = [&](std::size_t k) {
    if (parts.size() != k + 1) throw std::invalid_argument("corpus entry '" + std::string(text) + "': wrong arity");
  };
  CorpusEntry e;
  const auto head = parts[0];
  if (head == "annulus") {
    arity(1);
    e.family = CorpusFamily::AnnulusIndicator;
    e.j1 = e.j2 = parse_int(parts[1]);
  } else if (head == "annulus_sum") {
    arity(2);
    e.family = CorpusFamily::AnnulusSum;
    e.j1 = parse_int(parts[1]);
    e.j2 = parse_int(parts[2]);
    if (e.j1 > e.j2) throw std::invalid_argument("annulus_sum: J1 > J2");
  } else if (head == "power_tail") {
    arity(2);
    e.family = CorpusFamily::PowerTail;
    e.beta = parse_double(parts[1]);
    e.cutoff = parse_double(parts[2]);
    if (!(e.cutoff > 0.0)) throw std::invalid_argument("power_tail: cutoff must be positive");
  } else if (head == "gaussian") {
    arity(1);
    e.family = CorpusFamily::Gaussian;
    e.sigma = parse_double(parts[1]);
    if (!(e.sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be positive");
  } else if (head == "random") {
    arity(1);
    e.family = CorpusFamily::RandomDyadic;
    e.seed = parse_seed(parts[1]);
  } else if (head == "zero") {
    arity(0);
    e.family = CorpusFamily::Zero;
  } else {
    throw std::invalid_argument("unknown corpus family '" + std::string(head) + "'");
  }
  return e;
}

std::vector<CorpusEntry> annulus_entries(int j_lo, int j_hi) {
  std::vector<CorpusEntry> out;
  for (int j = j_lo; j <= j_hi; ++j) {
    CorpusEntry e;
    e.family = CorpusFamily::AnnulusIndicator;
    e.j1 = e.j2 = j;
    out.push_back(e);
  }
  return out;
}

CorpusSpec default_corpus(const GridParams& grid, int random_count) {
  CorpusSpec spec{grid, annulus_entries(grid.k_min, grid.k_max)};
  const int lo = std::max(-1, grid.k_min), hi = std::min(1, grid.k_max);
  if (lo < hi) {
    CorpusEntry e;
    e.family = CorpusFamily::AnnulusSum;
    e.j1 = lo;
    e.j2 = hi;
    spec.entries.push_back(e);
  }
  if (grid.k_max >= 0) {
    CorpusEntry e;
    e.family = CorpusFamily::PowerTail;
    e.beta = 0.3;
    e.cutoff = 1.0;
    spec.entries.push_back(e);
  }
  CorpusEntry g;
  g.family = CorpusFamily::Gaussian;
  g.sigma = 1.0;
  spec.entries.push_back(g);
  for (int s = 1; s <= random_count; ++s) {
    CorpusEntry e;
    e.family = CorpusFamily::RandomDyadic;
    e.seed = static_cast<std::uint64_t>(s);
    spec.entries.push_back(e);
  }
  return spec;
}

DyadicGrid make_grid(const GridParams& params) {
  return make_dyadic_grid(params.n, params.k_min, params.k_max, params.samples_per_octave);
}

GridFunction generate(const CorpusEntry& entry, const DyadicGrid& grid) {
  const auto& g = *grid.grid;
  const auto& d = grid.decomposition;
  const int n = g.dim();
  std::vector<double> values(g.size(), 0.0);

  switch (entry.family) {
    case CorpusFamily::Zero: break;
    case CorpusFamily::AnnulusIndicator:
    case CorpusFamily::AnnulusSum:
      require_annulus(grid, entry.j1);
      require_annulus(grid, entry.j2);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const int k = d.annulus_of(i);
        if (k != DyadicDecomposition::kOutside && k >= entry.j1 && k <= entry.j2) values[i] = 1.0;
      }
      break;
    case CorpusFamily::PowerTail:
      if (entry.cutoff > std::ldexp(1.0, d.k_max()))
        throw std::invalid_argument("power_tail: cutoff reaches outside the grid");
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = euclidean_norm(g.point(i));
        if (d.annulus_of(i) != DyadicDecomposition::kOutside && r < entry.cutoff) values[i] = std::pow(r, -entry.beta);
      }
      break;
    case CorpusFamily::Gaussian:
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = euclidean_norm(g.point(i));
        if (d.annulus_of(i) != DyadicDecomposition::kOutside)
          values[i] = std::exp(-r * r / (2.0 * entry.sigma * entry.sigma));
      }
      break;
    case CorpusFamily::RandomDyadic: {
      std::mt19937_64 rng(entry.seed);
      const std::size_t orthants = std::size_t{1} << n;
      std::vector<double> piece(static_cast<std::size_t>(d.count()) * orthants);
      for (auto& v : piece) {
        const double u = unit_double(rng);
        const double w = unit_double(rng);
        v = u < 0.25 ? 0.0 : w;
      }
      for (std::size_t i = 0; i < g.size(); ++i) {
        const int k = d.annulus_of(i);
        if (k == DyadicDecomposition::kOutside) continue;
        values[i] = piece[static_cast<std::size_t>(k - d.k_min()) * orthants + orthant(g.point(i), n)];
      }
      break;
    }
  }
  return GridFunction(grid.grid, std::move(values));
}

SupportSpan support_span(const GridFunction& f, const DyadicDecomposition& decomp) {
  SupportSpan s{decomp.k_max() + 1, decomp.k_min() - 1};
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    const int k = decomp.annulus_of(i);
    if (k == DyadicDecomposition::kOutside) throw std::invalid_argument("support_span: function leaves the annuli");
    s.lo = std::min(s.lo, k);
    s.hi = std::max(s.hi, k);
  }
  return s;
}

}  // namespace hmk
