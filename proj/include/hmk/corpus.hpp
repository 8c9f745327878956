#pragma once

/// \file
/// Test-function corpus: compactly supported, annulus-adapted functions on a
/// dyadic grid. Every generated function vanishes outside the union of the
/// annuli A_{k_min}, ..., A_{k_max}.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hmk/grid.hpp"

namespace hmk {

enum class CorpusFamily { AnnulusIndicator, AnnulusSum, PowerTail, Gaussian, RandomDyadic, Zero };

/// One corpus member. Text form (see parse_corpus_entry):
///   annulus:J            chi_{A_J}
///   annulus_sum:J1:J2    sum of chi_{A_j}, J1 <= j <= J2
///   power_tail:B:C       |x|^{-B} on |x| < C
///   gaussian:S           exp(-|x|^2 / (2 S^2))
///   random:SEED          one uniform [0, 1) value per annulus and orthant,
///                        a quarter of the pieces zero
///   zero
struct CorpusEntry {
  CorpusFamily family = CorpusFamily::Zero;
  int j1 = 0;
  int j2 = 0;
  double beta = 0.0;
  double cutoff = 1.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;

  /// Canonical text form; parse_corpus_entry(e.id()) reproduces e.
  std::string id() const;
};

CorpusEntry parse_corpus_entry(std::string_view text);

struct GridParams {
  int n = 1;
  int k_min = -4;
  int k_max = 4;
  int samples_per_octave = 16;
};

struct CorpusSpec {
  GridParams grid;
  std::vector<CorpusEntry> entries;
};

/// Annulus indicators for every k of the grid, annulus_sum over [-1, 1]
/// clipped to the grid, power_tail(0.3, 1), gaussian(1) and `random_count`
/// seeded random step functions (seeds 1, 2, ...).
CorpusSpec default_corpus(const GridParams& grid, int random_count = 20);

/// Single-annulus indicators j_lo, ..., j_hi.
std::vector<CorpusEntry> annulus_entries(int j_lo, int j_hi);

DyadicGrid make_grid(const GridParams& params);

/// Samples `entry` on `grid`. Throws std::invalid_argument when the function
/// would reach outside the decomposition (an annulus index outside
/// [k_min, k_max], or a power-tail cutoff past the grid).
GridFunction generate(const CorpusEntry& entry, const DyadicGrid& grid);

/// Lowest and highest annulus index touched by the support of f; lo > hi when
/// f = 0.
struct SupportSpan {
  int lo;
  int hi;
};
SupportSpan support_span(const GridFunction& f, const DyadicDecomposition& decomp);

}  // namespace hmk
