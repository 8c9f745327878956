#include "hmk/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "hmk/format.hpp"

namespace hmk {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (std::isfinite(v) && s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return v;
}

namespace {

constexpr std::string_view kMagic = "# hmk-grid-function v1";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

void write_csv(const GridFunction& f, std::ostream& out) {
  const auto& grid = f.grid();
  const int n = grid.dim();
  out << kMagic << '\n';
  for (int d = 0; d < n; ++d) out << 'x' << d + 1 << ',';
  for (int d = 0; d < n; ++d) out << 'w' << d + 1 << ',';
  out << "value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = grid.unflatten(i);
    for (int d = 0; d < n; ++d) out << format_double(grid.axis(d).point(idx[static_cast<std::size_t>(d)])) << ',';
    for (int d = 0; d < n; ++d)
      out << format_double(grid.axis(d).cell_width(idx[static_cast<std::size_t>(d)])) << ',';
    out << format_double(f[i]) << '\n';
  }
}

GridFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0)
    throw std::invalid_argument("read_csv: missing grid-function header");
  if (!std::getline(in, line)) throw std::invalid_argument("read_csv: missing column header");
  const auto header = split(line);
  if (header.size() < 3 || (header.size() - 1) % 2 != 0 || header.back() != "value")
    throw std::invalid_argument("read_csv: malformed column header");
  const int n = static_cast<int>((header.size() - 1) / 2);
  if (n > kMaxDim) throw std::invalid_argument("read_csv: dimension above 3");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::invalid_argument("read_csv: ragged row");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c));
    rows.push_back(std::move(row));
  }

  std::vector<std::map<double, double>> axis_cells(static_cast<std::size_t>(n));
  for (const auto& r : rows)
    for (int d = 0; d < n; ++d) {
      auto [it, inserted] = axis_cells[static_cast<std::size_t>(d)].emplace(r[static_cast<std::size_t>(d)],
                                                                           r[static_cast<std::size_t>(n + d)]);
      if (!inserted && it->second != r[static_cast<std::size_t>(n + d)])
        throw std::invalid_argument("read_csv: inconsistent cell width");
    }
  std::vector<AxisGrid> axes;
  for (const auto& cells : axis_cells) {
    std::vector<double> pts, ws;
    for (auto [p, w] : cells) {
      pts.push_back(p);
      ws.push_back(w);
    }
    axes.emplace_back(std::move(pts), std::move(ws));
  }
  auto grid = std::make_shared<const TensorGrid>(std::move(axes));
  if (rows.size() != grid->size()) throw std::invalid_argument("read_csv: row count does not match grid");

  std::vector<double> values(grid->size(), 0.0);
  std::vector<std::uint8_t> seen(grid->size(), 0);
  for (const auto& r : rows) {
    std::array<std::size_t, kMaxDim> idx{0, 0, 0};
    for (int d = 0; d < n; ++d) {
      const auto& cells = axis_cells[static_cast<std::size_t>(d)];
      idx[static_cast<std::size_t>(d)] =
          static_cast<std::size_t>(std::distance(cells.begin(), cells.find(r[static_cast<std::size_t>(d)])));
    }
    const auto flat = grid->flatten(idx);
    if (seen[flat]) throw std::invalid_argument("read_csv: duplicate sample");
    seen[flat] = 1;
    values[flat] = r.back();
  }
  return GridFunction(std::move(grid), std::move(values));
}

}  // namespace hmk
