#include "qapnet/panel.h"

#include <fmt/format.h>

#include "qapnet/csv.h"

namespace qapnet {

NodePanel::NodePanel(NodeSet nodes) : nodes_(std::move(nodes)) {
  CategoricalValues sample(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) sample[i] = nodes_.key(i).sample;
  AddColumn("sample", std::move(sample));
}

void NodePanel::AddColumn(const std::string& name, Column column) {
  const std::size_t len = std::visit([](const auto& v) { return v.size(); }, column);
  if (len != nodes_.size())
    throw Error(fmt::format("attribute '{}' has {} values for {} nodes", name,
                            len, nodes_.size()));
  if (!attributes_.count(name)) order_.push_back(name);
  attributes_[name] = std::move(column);
}

void NodePanel::AddNumeric(const std::string& name, NumericValues values) {
  AddColumn(name, std::move(values));
}

void NodePanel::AddCategorical(const std::string& name, CategoricalValues values) {
  AddColumn(name, std::move(values));
}

bool NodePanel::IsNumeric(const std::string& name) const {
  auto it = attributes_.find(name);
  return it != attributes_.end() && std::holds_alternative<NumericValues>(it->second);
}

const NumericValues& NodePanel::Numeric(const std::string& name) const {
  auto it = attributes_.find(name);
  if (it == attributes_.end()) throw Error(fmt::format("unknown attribute '{}'", name));
  if (!std::holds_alternative<NumericValues>(it->second))
    throw Error(fmt::format("attribute '{}' is not numeric", name));
  return std::get<NumericValues>(it->second);
}

const CategoricalValues& NodePanel::Categorical(const std::string& name) const {
  auto it = attributes_.find(name);
  if (it == attributes_.end()) throw Error(fmt::format("unknown attribute '{}'", name));
  if (!std::holds_alternative<CategoricalValues>(it->second))
    throw Error(fmt::format("attribute '{}' is not categorical", name));
  return std::get<CategoricalValues>(it->second);
}

NodePanel NodePanel::RestrictToSample(const std::string& sample,
                                      std::vector<std::size_t>* mapping) const {
  std::vector<std::size_t> keep;
  NodePanel out(nodes_.Restrict(sample, &keep));
  for (const auto& name : order_) {
    if (name == "sample") continue;
    std::visit(
        [&](const auto& values) {
          std::decay_t<decltype(values)> sub;
          sub.reserve(keep.size());
          for (std::size_t i : keep) sub.push_back(values[i]);
          out.AddColumn(name, std::move(sub));
        },
        attributes_.at(name));
  }
  if (mapping) *mapping = std::move(keep);
  return out;
}

NodePanel ReadAttributes(std::istream& in, const AttributeReadOptions& options) {
  csv::Reader reader(in);
  auto header = reader.Next();
  if (!header || header->fields.size() < 2 || header->fields[0] != "node_id" ||
      header->fields[1] != "sample_id")
    throw Error("attributes header must start with 'node_id,sample_id'");
  const auto& names = header->fields;
  for (std::size_t c = 2; c < names.size(); ++c)
    if (names[c] == "sample" || names[c].empty())
      throw Error(fmt::format("reserved or empty attribute name '{}'", names[c]));

  NodeSet nodes;
  std::vector<std::vector<std::string>> columns(names.size() - 2);
  while (auto row = reader.Next()) {
    if (row->fields.size() != names.size())
      throw Error(fmt::format("line {}: expected {} fields, got {}", row->line,
                              names.size(), row->fields.size()));
    const auto& node = row->fields[0];
    const auto& sample = row->fields[1];
    if (node.empty() || sample.empty())
      throw Error(fmt::format("line {}: empty node or sample id", row->line));
    if (nodes.Find(sample, node))
      throw Error(fmt::format("line {}: duplicate node '{}' in sample '{}'",
                              row->line, node, sample));
    nodes.Add(sample, node);
    for (std::size_t c = 2; c < names.size(); ++c)
      columns[c - 2].push_back(row->fields[c]);
  }

  NodePanel panel(std::move(nodes));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& name = names[c + 2];
    bool numeric = !options.categorical.count(name);
    NumericValues parsed(columns[c].size());
    for (std::size_t i = 0; i < columns[c].size() && numeric; ++i) {
      if (columns[c][i].empty()) continue;
      parsed[i] = csv::ParseDouble(columns[c][i]);
      numeric = parsed[i].has_value();
    }
    if (numeric) {
      panel.AddNumeric(name, std::move(parsed));
    } else {
      CategoricalValues cats(columns[c].size());
      for (std::size_t i = 0; i < columns[c].size(); ++i)
        if (!columns[c][i].empty()) cats[i] = columns[c][i];
      panel.AddCategorical(name, std::move(cats));
    }
  }
  return panel;
}

void WriteAttributes(std::ostream& out, const NodePanel& panel) {
  out << "node_id,sample_id";
  std::vector<std::string> cols;
  for (const auto& name : panel.names())
    if (name != "sample") cols.push_back(name);
  for (const auto& c : cols) out << ',' << csv::Escape(c);
  out << '\n';
  for (std::size_t i = 0; i < panel.size(); ++i) {
    const auto& key = panel.nodes().key(i);
    out << csv::Escape(key.node) << ',' << csv::Escape(key.sample);
    for (const auto& c : cols) {
      out << ',';
      if (panel.IsNumeric(c)) {
        if (const auto& v = panel.Numeric(c)[i]) out << fmt::format("{}", *v);
      } else if (const auto& v = panel.Categorical(c)[i]) {
        out << csv::Escape(*v);
      }
    }
    out << '\n';
  }
}

NominationNetwork::NominationNetwork(std::size_t n)
    : n_(n), ties_(n * n, 0), respondent_(n, 1) {}

void NominationNetwork::AddTie(std::size_t ego, std::size_t alter) {
  if (ego >= n_ || alter >= n_) throw Error("nomination outside the node range");
  if (ego == alter) throw Error("self-nomination");
  ties_[ego * n_ + alter] = 1;
}

void NominationNetwork::SetRespondent(std::size_t node, bool respondent) {
  respondent_.at(node) = respondent ? 1 : 0;
}

std::optional<bool> NominationNetwork::Observed(std::size_t ego,
                                                std::size_t alter) const {
  if (!Respondent(ego)) return std::nullopt;
  return Tie(ego, alter);
}

std::size_t NominationNetwork::TieCount() const {
  std::size_t count = 0;
  for (auto t : ties_) count += t;
  return count;
}

std::vector<std::uint8_t> ReadRespondents(std::istream& in, const NodeSet& nodes) {
  csv::Reader reader(in);
  auto header = reader.Next();
  if (!header || header->fields.size() != 2 || header->fields[0] != "sample_id" ||
      header->fields[1] != "node_id")
    throw Error("respondents header must be 'sample_id,node_id'");
  std::vector<std::uint8_t> out(nodes.size(), 0);
  while (auto row = reader.Next()) {
    if (row->fields.size() != 2)
      throw Error(fmt::format("line {}: expected 2 fields", row->line));
    auto idx = nodes.Find(row->fields[0], row->fields[1]);
    if (!idx)
      throw Error(fmt::format("line {}: unknown node '{}'", row->line, row->fields[1]));
    out[*idx] = 1;
  }
  return out;
}

NominationReadResult ReadNominations(
    std::istream& in, const NodeSet& nodes,
    const std::optional<std::vector<std::uint8_t>>& respondents) {
  NominationReadResult result{NominationNetwork(nodes.size()), {}};
  if (respondents) {
    if (respondents->size() != nodes.size())
      throw Error("respondent flags do not match the node set");
    for (std::size_t i = 0; i < nodes.size(); ++i)
      result.network.SetRespondent(i, (*respondents)[i] != 0);
  }
  csv::Reader reader(in);
  auto header = reader.Next();
  if (!header) return result;
  if (header->fields.size() != 3 || header->fields[0] != "sample_id" ||
      header->fields[1] != "ego" || header->fields[2] != "alter")
    throw Error("nominations header must be 'sample_id,ego,alter'");
  auto reject = [&](std::size_t line, std::string msg) {
    result.issues.push_back({line, Severity::kError, std::move(msg)});
  };
  while (auto row = reader.Next()) {
    const auto& f = row->fields;
    if (f.size() != 3) {
      reject(row->line, "expected 3 fields");
      continue;
    }
    auto ego = nodes.Find(f[0], f[1]);
    auto alter = nodes.Find(f[0], f[2]);
    if (!ego || !alter) {
      reject(row->line, fmt::format("unknown node '{}' in sample '{}'",
                                    ego ? f[2] : f[1], f[0]));
      continue;
    }
    if (*ego == *alter) {
      reject(row->line, "self-nomination");
      continue;
    }
    if (!result.network.Respondent(*ego)) {
      reject(row->line, fmt::format("'{}' is not a respondent", f[1]));
      continue;
    }
    if (result.network.Tie(*ego, *alter))
      result.issues.push_back({row->line, Severity::kWarning, "duplicate nomination"});
    result.network.AddTie(*ego, *alter);
  }
  return result;
}

void WriteNominations(std::ostream& out, const NominationNetwork& network,
                      const NodeSet& nodes) {
  out << "sample_id,ego,alter\n";
  for (std::size_t i = 0; i < network.size(); ++i)
    for (std::size_t j = 0; j < network.size(); ++j)
      if (i != j && network.Tie(i, j))
        out << csv::Escape(nodes.key(i).sample) << ',' << csv::Escape(nodes.key(i).node)
            << ',' << csv::Escape(nodes.key(j).node) << '\n';
}

void WriteRespondents(std::ostream& out, const NominationNetwork& network,
                      const NodeSet& nodes) {
  out << "sample_id,node_id\n";
  for (std::size_t i = 0; i < network.size(); ++i)
    if (network.Respondent(i))
      out << csv::Escape(nodes.key(i).sample) << ',' << csv::Escape(nodes.key(i).node)
          << '\n';
}

}  // namespace qapnet
