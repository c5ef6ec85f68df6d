#include "qapnet/error.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace qapnet {

RankDeficientError::RankDeficientError(std::vector<std::string> collinear_terms)
    : Error(fmt::format("design matrix is rank deficient; collinear terms: {}",
                        fmt::join(collinear_terms, ", "))),
      collinear_terms_(std::move(collinear_terms)) {}

ReplicateFailureError::ReplicateFailureError(std::size_t failed,
                                             std::size_t attempted)
    : Error(fmt::format(
          "{} of {} permutation replicates had a degenerate design (limit 1%)",
          failed, attempted)),
      failed_(failed),
      attempted_(attempted) {}

std::string FormatIssue(const RowIssue& issue) {
  return fmt::format("line {}: {}: {}", issue.line,
                     issue.severity == Severity::kError ? "error" : "warning",
                     issue.message);
}

}  // namespace qapnet
