#include "qapnet/selection.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qapnet/csv.h"
#include "qapnet/error.h"

namespace qapnet {
namespace {

struct Rgb {
  double r, g, b;
};
constexpr Rgb kLowColor{255, 255, 0};   // yellow
constexpr Rgb kHighColor{139, 0, 0};    // dark red

}  // namespace

SelectionCoefficients SelectionCoefficients::Parse(const std::string& text) {
  const auto fields = csv::SplitLine(text);
  if (fields.size() != 4)
    throw Error(fmt::format("expected four coefficients 'b0,b1,b2,b3', got '{}'", text));
  double v[4];
  for (int k = 0; k < 4; ++k) {
    auto parsed = csv::ParseDouble(fields[static_cast<std::size_t>(k)]);
    if (!parsed) throw Error(fmt::format("bad coefficient '{}'", fields[static_cast<std::size_t>(k)]));
    v[k] = *parsed;
  }
  return {v[0], v[1], v[2], v[3]};
}

double SelectionCell(double vi, double vj, const SelectionCoefficients& c) {
  const double mean = (vi + vj) / 2.0;
  const double similarity = -std::abs(vi - vj);
  const double y = std::exp(c.intercept + c.mean * mean + c.similarity * similarity +
                            c.interaction * mean * similarity);
  if (!std::isfinite(y))
    throw Error(fmt::format("selection cell ({}, {}) is not finite", vi, vj));
  return y;
}

double SelectionDistanceSlope(double mean, const SelectionCoefficients& c) {
  return -(c.similarity + c.interaction * mean);
}

SelectionGrid::SelectionGrid(int lo, int hi, const SelectionCoefficients& coefficients)
    : lo_(lo), hi_(hi), coefficients_(coefficients) {
  if (lo > hi) throw Error(fmt::format("empty selection range {}:{}", lo, hi));
  const auto n = static_cast<std::size_t>(extent());
  cells_.resize(n * n);
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b)
      cells_[static_cast<std::size_t>(a - lo) * n + static_cast<std::size_t>(b - lo)] =
          SelectionCell(a, b, coefficients);
}

double SelectionGrid::at(int vi, int vj) const {
  if (vi < lo_ || vi > hi_ || vj < lo_ || vj > hi_)
    throw Error(fmt::format("({}, {}) outside the grid", vi, vj));
  const auto n = static_cast<std::size_t>(extent());
  return cells_[static_cast<std::size_t>(vi - lo_) * n + static_cast<std::size_t>(vj - lo_)];
}

void WriteSelectionCsv(std::ostream& out, const SelectionGrid& grid) {
  out << "v_i\\v_j";
  for (int b = grid.lo(); b <= grid.hi(); ++b) out << ',' << b;
  out << '\n';
  for (int a = grid.lo(); a <= grid.hi(); ++a) {
    out << a;
    for (int b = grid.lo(); b <= grid.hi(); ++b) out << ',' << fmt::format("{:.4g}", grid.at(a, b));
    out << '\n';
  }
}

void WriteSelectionPpm(std::ostream& out, const SelectionGrid& grid, int scale) {
  if (scale < 1) throw Error("PPM scale must be positive");
  double lo = grid.at(grid.lo(), grid.lo()), hi = lo;
  for (int a = grid.lo(); a <= grid.hi(); ++a)
    for (int b = grid.lo(); b <= grid.hi(); ++b) {
      lo = std::min(lo, grid.at(a, b));
      hi = std::max(hi, grid.at(a, b));
    }
  const int side = grid.extent() * scale;
  out << "P6\n" << side << ' ' << side << "\n255\n";
  for (int py = 0; py < side; ++py)
    for (int px = 0; px < side; ++px) {
      const double v = grid.at(grid.lo() + py / scale, grid.lo() + px / scale);
      const double t = hi > lo ? (v - lo) / (hi - lo) : 0.0;
      const auto mix = [t](double a, double b) {
        return static_cast<char>(static_cast<unsigned char>(std::lround(a + t * (b - a))));
      };
      out.put(mix(kLowColor.r, kHighColor.r));
      out.put(mix(kLowColor.g, kHighColor.g));
      out.put(mix(kLowColor.b, kHighColor.b));
    }
}

}  // namespace qapnet
