#ifndef QAPNET_CONTACTS_H_
#define QAPNET_CONTACTS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "qapnet/dyadic_matrix.h"
#include "qapnet/error.h"
#include "qapnet/node_set.h"

namespace qapnet {

inline constexpr std::int64_t kDefaultMergeGap = 75;

// An undirected contact interval [t_start, t_end) between two nodes of one
// sample. Node indices refer to a NodeSet and are stored with node_a < node_b.
//
// `covered` counts the seconds actually observed inside the interval. It
// equals t_end - t_start for raw events and drops below it once merging has
// bridged silent gaps.
struct ContactEvent {
  int sample = 0;
  std::size_t node_a = 0;
  std::size_t node_b = 0;
  std::int64_t t_start = 0;
  std::int64_t t_end = 0;
  std::int64_t covered = 0;

  std::int64_t span() const { return t_end - t_start; }

  bool operator==(const ContactEvent&) const = default;
};

// Builds a raw event, ordering the pair. Throws on a self-contact or an
// empty/inverted interval.
ContactEvent MakeContact(int sample, std::size_t a, std::size_t b,
                         std::int64_t t_start, std::int64_t t_end);

// Canonical order: (sample, node_a, node_b, t_start, t_end).
bool ContactLess(const ContactEvent& x, const ContactEvent& y);

struct ContactParseOptions {
  // When false, rows naming a node missing from the NodeSet are rejected.
  bool add_unknown_nodes = true;
};

struct ContactParseResult {
  std::vector<ContactEvent> events;
  std::vector<RowIssue> issues;

  bool has_errors() const;
};

// Reads the contacts CSV (`sample_id,node_a,node_b,t_start,t_end`). Bad rows
// are reported with their line number and skipped; exact duplicates produce
// a warning and are dropped. Output is in canonical order. Throws Error when
// the header does not match.
ContactParseResult ParseContacts(std::istream& in, NodeSet& nodes,
                                 const ContactParseOptions& options = {});

void WriteContacts(std::ostream& out, std::span<const ContactEvent> events,
                   const NodeSet& nodes);

// Fuses successive events of the same dyad whose silence (next start minus
// current end) is at most `gap`. A fused event spans from the first start to
// the last end; `covered` keeps the union of observed time. gap < 0 throws.
std::vector<ContactEvent> MergeEvents(std::span<const ContactEvent> events,
                                      std::int64_t gap = kDefaultMergeGap);

// What an event contributes to a dyad's total.
enum class DurationMode {
  kSpan,     // t_end - t_start; bridged gaps count as interaction
  kCovered,  // observed seconds only (sum of sub-durations)
};

// Symmetric matrix of summed durations per dyad; dyads without events are 0.
// Throws if an event refers to a node index >= node_count.
DyadicMatrix AggregateDurations(std::span<const ContactEvent> events,
                                std::size_t node_count,
                                DurationMode mode = DurationMode::kSpan);

// Scales every observed cell by 3600 / window_seconds.
DyadicMatrix NormalizePerHour(const DyadicMatrix& seconds, double window_seconds);
// Per-group windows; dyads spanning two groups are scaled by neither and
// must be zero.
DyadicMatrix NormalizePerHour(const DyadicMatrix& seconds,
                              std::span<const int> groups,
                              std::span<const double> window_seconds);

// Span from the first recorded start to the last recorded end in each
// sample; 0 for samples without events.
std::vector<std::int64_t> SampleWindows(std::span<const ContactEvent> events,
                                        std::size_t group_count);

// How an instantaneous contact graph is split into dyadic vs group contact.
enum class GroupRule {
  // Connected components: size 2 is dyadic, size >= 3 is group.
  kComponent,
  // A node in a triangle is in a group; any other node with an active
  // contact is dyadic.
  kClique,
};

struct NodeExposure {
  std::size_t node = 0;
  std::int64_t seconds_dyadic = 0;
  std::int64_t seconds_group = 0;
  std::int64_t seconds_total = 0;
  // Unset when seconds_total == 0.
  std::optional<double> ratio_dyadic;
};

// One maximal stretch [t_start, t_end) during which the set of active
// contacts in a sample does not change. Only segments with at least one
// active contact are recorded.
struct CopresenceSegment {
  int sample = 0;
  std::int64_t t_start = 0;
  std::int64_t t_end = 0;
  std::vector<std::size_t> dyadic_nodes;
  std::vector<std::size_t> group_nodes;
};

struct CopresenceResult {
  std::vector<CopresenceSegment> timeline;
  std::vector<NodeExposure> exposures;  // one per node, indexed by node
};

CopresenceResult ClassifyCopresence(std::span<const ContactEvent> events,
                                    std::size_t node_count,
                                    GroupRule rule = GroupRule::kComponent);

// CSV `sample_id,node_id,seconds_dyadic,seconds_group,seconds_total,ratio_dyadic`;
// the ratio field is empty when undefined.
void WriteExposureReport(std::ostream& out,
                         std::span<const NodeExposure> exposures,
                         const NodeSet& nodes);
std::vector<NodeExposure> ReadExposureReport(std::istream& in,
                                             const NodeSet& nodes);

}  // namespace qapnet

#endif  // QAPNET_CONTACTS_H_
