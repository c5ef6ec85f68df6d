#ifndef QAPNET_DYADIC_MATRIX_H_
#define QAPNET_DYADIC_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qapnet {

// Square real-valued matrix over nodes with a per-cell missing mask.
//
// Symmetric matrices store both triangles and keep them in sync on every
// write, so value(i, j) == value(j, i) and missing(i, j) == missing(j, i)
// always hold. The diagonal is always missing.
class DyadicMatrix {
 public:
  DyadicMatrix() = default;
  // All off-diagonal cells start at `fill` and observed.
  explicit DyadicMatrix(std::size_t n, std::string label = {},
                        bool symmetric = true, double fill = 0.0);

  std::size_t size() const { return n_; }
  bool symmetric() const { return symmetric_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  double value(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  bool missing(std::size_t i, std::size_t j) const { return missing_[i * n_ + j] != 0; }

  // Writes (and unmasks) the cell; mirrors it when symmetric. Writing the
  // diagonal is an error.
  void Set(std::size_t i, std::size_t j, double v);
  void SetMissing(std::size_t i, std::size_t j);

  // Number of observed off-diagonal cells over unordered dyads {i<j}.
  std::size_t ObservedDyads() const;
  bool AnyMissingOffDiagonal() const;

  // Re-checks the symmetry invariant cell by cell.
  bool IsSymmetricExact() const;

  std::span<const double> values() const { return values_; }
  std::span<const std::uint8_t> mask() const { return missing_; }

 private:
  void CheckIndex(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  bool symmetric_ = true;
  std::string label_;
  std::vector<double> values_;
  std::vector<std::uint8_t> missing_;
};

}  // namespace qapnet

#endif  // QAPNET_DYADIC_MATRIX_H_
