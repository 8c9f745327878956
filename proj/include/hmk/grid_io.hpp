#pragma once

/// \file
/// GridFunction CSV serialization.
///
/// Layout (one file per function):
///
///     # hmk-grid-function v1
///     x1,...,xn,w1,...,wn,value
///     <one row per sample, x_1 varying fastest>
///
/// `x_i` is the cell center on axis i and `w_i` its cell width. Every number is
/// written in shortest round-trip form, so reading back reproduces the axes
/// and values bit for bit.

#include <iosfwd>

#include "hmk/grid.hpp"

namespace hmk {

void write_csv(const GridFunction& f, std::ostream& out);
GridFunction read_csv(std::istream& in);

}  // namespace hmk
