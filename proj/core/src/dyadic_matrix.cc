#include "qapnet/dyadic_matrix.h"

#include "qapnet/error.h"

#include <fmt/format.h>

namespace qapnet {

DyadicMatrix::DyadicMatrix(std::size_t n, std::string label, bool symmetric,
                           double fill)
    : n_(n),
      symmetric_(symmetric),
      label_(std::move(label)),
      values_(n * n, fill),
      missing_(n * n, 0) {
  for (std::size_t i = 0; i < n; ++i) {
    values_[i * n + i] = 0.0;
    missing_[i * n + i] = 1;
  }
}

void DyadicMatrix::CheckIndex(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw Error(fmt::format("cell ({}, {}) out of range for {}x{} matrix", i,
                            j, n_, n_));
  }
  if (i == j) throw Error("the diagonal of a dyadic matrix is undefined");
}

void DyadicMatrix::Set(std::size_t i, std::size_t j, double v) {
  CheckIndex(i, j);
  values_[i * n_ + j] = v;
  missing_[i * n_ + j] = 0;
  if (symmetric_) {
    values_[j * n_ + i] = v;
    missing_[j * n_ + i] = 0;
  }
}

void DyadicMatrix::SetMissing(std::size_t i, std::size_t j) {
  CheckIndex(i, j);
  values_[i * n_ + j] = 0.0;
  missing_[i * n_ + j] = 1;
  if (symmetric_) {
    values_[j * n_ + i] = 0.0;
    missing_[j * n_ + i] = 1;
  }
}

std::size_t DyadicMatrix::ObservedDyads() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!missing(i, j) && !missing(j, i)) ++count;
  return count;
}

bool DyadicMatrix::AnyMissingOffDiagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && missing(i, j)) return true;
  return false;
}

bool DyadicMatrix::IsSymmetricExact() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (values_[i * n_ + j] != values_[j * n_ + i] ||
          missing_[i * n_ + j] != missing_[j * n_ + i])
        return false;
  return true;
}

}  // namespace qapnet
