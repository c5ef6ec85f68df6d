#ifndef QAPNET_NODE_SET_H_
#define QAPNET_NODE_SET_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qapnet {

// Node ids are only unique within a sample, so a node is keyed by both.
struct NodeKey {
  std::string sample;
  std::string node;

  auto operator<=>(const NodeKey&) const = default;
};

// Dense indexing of nodes across samples. Each sample becomes a group with a
// small integer label, assigned in first-seen order. Node indices are stable
// and follow insertion order.
class NodeSet {
 public:
  // Returns the index of the (possibly new) node.
  std::size_t Add(const std::string& sample, const std::string& node);

  std::optional<std::size_t> Find(const std::string& sample,
                                   const std::string& node) const;
  std::optional<int> FindSample(const std::string& sample) const;

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }

  const NodeKey& key(std::size_t index) const { return keys_.at(index); }
  int group(std::size_t index) const { return groups_.at(index); }

  // Group label per node, indexed like the nodes.
  const std::vector<int>& groups() const { return groups_; }
  // Sample ids ordered by group label.
  const std::vector<std::string>& samples() const { return samples_; }

  // Nodes belonging to one sample, in index order, as a fresh NodeSet.
  // `mapping` receives the old index of every kept node.
  NodeSet Restrict(const std::string& sample,
                   std::vector<std::size_t>* mapping) const;

 private:
  std::vector<NodeKey> keys_;
  std::vector<int> groups_;
  std::vector<std::string> samples_;
  std::map<NodeKey, std::size_t> index_;
  std::map<std::string, int> sample_index_;
};

}  // namespace qapnet

#endif  // QAPNET_NODE_SET_H_
