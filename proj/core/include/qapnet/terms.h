#ifndef QAPNET_TERMS_H_
#define QAPNET_TERMS_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qapnet/dyadic_matrix.h"
#include "qapnet/panel.h"

namespace qapnet {

// Everything a model can reference: node attributes, named nomination
// networks, and named dyadic matrices (the dependent, e.g. durations).
struct Dataset {
  NodePanel panel;
  std::map<std::string, NominationNetwork> networks;
  std::map<std::string, DyadicMatrix> dyadic;
  // Set on sample subsets: the full panel, so a level that is absent from
  // this sample but present elsewhere yields an all-zero dummy.
  std::shared_ptr<const NodePanel> source_panel;

  const NodeSet& nodes() const { return panel.nodes(); }

  // Sub-dataset holding only one sample's nodes.
  Dataset RestrictToSample(const std::string& sample) const;
};

// Parsed covariate expression. Grammar:
//
//   term   := op '(' args ')' | name
//   op     := mean | centered_mean | similarity   (numeric attribute)
//           | any | both | one                    (attribute=level)
//           | same                                (attribute)
//           | or | mutual | asymmetric            (nomination network)
//           | product                             (two or more terms)
//
// A bare name refers to a dyadic matrix in the dataset.
struct TermExpr {
  std::string op;
  std::string name;
  std::optional<std::string> level;
  std::vector<TermExpr> args;

  std::string ToString() const;
};

// Throws Error with the offending position on malformed input.
TermExpr ParseTerm(std::string_view text);

DyadicMatrix EvaluateTerm(const TermExpr& expr, const Dataset& data);
DyadicMatrix EvaluateTerm(std::string_view text, const Dataset& data);

}  // namespace qapnet

#endif  // QAPNET_TERMS_H_
