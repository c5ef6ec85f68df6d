#ifndef QAPNET_PANEL_H_
#define QAPNET_PANEL_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qapnet/error.h"
#include "qapnet/node_set.h"

namespace qapnet {

using NumericValues = std::vector<std::optional<double>>;
using CategoricalValues = std::vector<std::optional<std::string>>;

// Per-node attributes over a NodeSet. Every panel carries a categorical
// attribute named "sample" holding each node's sample id.
class NodePanel {
 public:
  NodePanel() = default;
  explicit NodePanel(NodeSet nodes);

  const NodeSet& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  void AddNumeric(const std::string& name, NumericValues values);
  void AddCategorical(const std::string& name, CategoricalValues values);

  bool Has(const std::string& name) const { return attributes_.count(name) > 0; }
  bool IsNumeric(const std::string& name) const;

  // Throw Error when the attribute is absent or of the other kind.
  const NumericValues& Numeric(const std::string& name) const;
  const CategoricalValues& Categorical(const std::string& name) const;

  // Attribute names in column order.
  const std::vector<std::string>& names() const { return order_; }

  // Keeps only the nodes of one sample.
  NodePanel RestrictToSample(const std::string& sample,
                             std::vector<std::size_t>* mapping = nullptr) const;

 private:
  using Column = std::variant<NumericValues, CategoricalValues>;
  void AddColumn(const std::string& name, Column column);

  NodeSet nodes_;
  std::map<std::string, Column> attributes_;
  std::vector<std::string> order_;
};

struct AttributeReadOptions {
  // Columns read as categorical even when every value parses as a number.
  std::set<std::string> categorical;
};

// Reads `node_id,sample_id,<attr>...`; an empty field is missing. A column
// is numeric when all its non-empty fields parse as numbers.
NodePanel ReadAttributes(std::istream& in, const AttributeReadOptions& options = {});
void WriteAttributes(std::ostream& out, const NodePanel& panel);

// Directed binary nomination network. Rows of non-respondents are missing:
// they may receive nominations but their own are unobserved.
class NominationNetwork {
 public:
  NominationNetwork() = default;
  explicit NominationNetwork(std::size_t n);

  std::size_t size() const { return n_; }

  void AddTie(std::size_t ego, std::size_t alter);
  bool Tie(std::size_t ego, std::size_t alter) const { return ties_[ego * n_ + alter] != 0; }

  void SetRespondent(std::size_t node, bool respondent);
  bool Respondent(std::size_t node) const { return respondent_[node] != 0; }

  // Unset when ego's row is missing.
  std::optional<bool> Observed(std::size_t ego, std::size_t alter) const;

  std::size_t TieCount() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> ties_;
  std::vector<std::uint8_t> respondent_;
};

struct NominationReadResult {
  NominationNetwork network;
  std::vector<RowIssue> issues;
};

// Reads `sample_id,node_id` rows naming the survey respondents.
std::vector<std::uint8_t> ReadRespondents(std::istream& in, const NodeSet& nodes);

// Reads `sample_id,ego,alter`. Without a respondent list every node is a
// respondent. Self-nominations, unknown nodes, and nominations by
// non-respondents are rejected row by row.
NominationReadResult ReadNominations(
    std::istream& in, const NodeSet& nodes,
    const std::optional<std::vector<std::uint8_t>>& respondents = std::nullopt);

void WriteNominations(std::ostream& out, const NominationNetwork& network,
                      const NodeSet& nodes);
void WriteRespondents(std::ostream& out, const NominationNetwork& network,
                      const NodeSet& nodes);

}  // namespace qapnet

#endif  // QAPNET_PANEL_H_
