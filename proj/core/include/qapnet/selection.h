#ifndef QAPNET_SELECTION_H_
#define QAPNET_SELECTION_H_

#include <ostream>
#include <string>
#include <vector>

namespace qapnet {

// Coefficients of a log-linear duration model restricted to one attribute:
// intercept, attribute mean, attribute similarity, and mean x similarity.
// Every other term sits at its reference category (zero).
struct SelectionCoefficients {
  double intercept = 0.0;
  double mean = 0.0;
  double similarity = 0.0;
  double interaction = 0.0;

  // "b0,b1,b2,b3"
  static SelectionCoefficients Parse(const std::string& text);
};

// exp(b0 + b1 m + b2 s + b3 m s) with m = (vi + vj) / 2 and s = -|vi - vj|.
// Throws when the result is not finite.
double SelectionCell(double vi, double vj, const SelectionCoefficients& c);

// d(exponent)/d|vi - vj| at a fixed mean m: -(b2 + b3 m).
double SelectionDistanceSlope(double mean, const SelectionCoefficients& c);

class SelectionGrid {
 public:
  // Integer values lo..hi inclusive; throws if lo > hi.
  SelectionGrid(int lo, int hi, const SelectionCoefficients& coefficients);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int extent() const { return hi_ - lo_ + 1; }
  double at(int vi, int vj) const;
  const SelectionCoefficients& coefficients() const { return coefficients_; }

 private:
  int lo_;
  int hi_;
  SelectionCoefficients coefficients_;
  std::vector<double> cells_;
};

// First row and column hold the values; cells use 4 significant digits.
void WriteSelectionCsv(std::ostream& out, const SelectionGrid& grid);

// Binary PPM (P6), `scale` pixels per cell, row vi = lo at the top. Colour
// runs linearly from yellow at the grid minimum to dark red at the maximum.
void WriteSelectionPpm(std::ostream& out, const SelectionGrid& grid, int scale = 8);

}  // namespace qapnet

#endif  // QAPNET_SELECTION_H_
