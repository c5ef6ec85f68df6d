#ifndef QAPNET_ERROR_H_
#define QAPNET_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qapnet {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A design matrix without full column rank. `collinear_terms` names the
// columns the pivoted QR found to be linearly dependent on earlier ones.
class RankDeficientError : public Error {
 public:
  RankDeficientError(std::vector<std::string> collinear_terms);

  const std::vector<std::string>& collinear_terms() const {
    return collinear_terms_;
  }

 private:
  std::vector<std::string> collinear_terms_;
};

// Too many permutation replicates produced a degenerate design.
class ReplicateFailureError : public Error {
 public:
  ReplicateFailureError(std::size_t failed, std::size_t attempted);

  std::size_t failed() const { return failed_; }
  std::size_t attempted() const { return attempted_; }

 private:
  std::size_t failed_;
  std::size_t attempted_;
};

enum class Severity { kWarning, kError };

// A problem tied to one line of an input file. Rows with kError were
// dropped; kWarning rows were kept (possibly after a fixup).
struct RowIssue {
  std::size_t line = 0;
  Severity severity = Severity::kError;
  std::string message;
};

std::string FormatIssue(const RowIssue& issue);

}  // namespace qapnet

#endif  // QAPNET_ERROR_H_
