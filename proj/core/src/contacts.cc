#include "qapnet/contacts.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

#include <fmt/format.h>

#include "qapnet/csv.h"

namespace qapnet {
namespace {

constexpr const char* kContactsHeader = "sample_id,node_a,node_b,t_start,t_end";

bool SameDyad(const ContactEvent& x, const ContactEvent& y) {
  return x.sample == y.sample && x.node_a == y.node_a && x.node_b == y.node_b;
}

// Union-find over a small set of local ids.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::size_t SizeOf(std::size_t x) { return size_[Find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

using Edge = std::pair<std::size_t, std::size_t>;

void ClassifyActive(const std::map<Edge, int>& active, GroupRule rule,
                    CopresenceSegment& segment) {
  std::vector<std::size_t> local;
  for (const auto& [edge, count] : active) {
    local.push_back(edge.first);
    local.push_back(edge.second);
  }
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());
  auto id = [&](std::size_t node) {
    return static_cast<std::size_t>(
        std::lower_bound(local.begin(), local.end(), node) - local.begin());
  };

  if (rule == GroupRule::kComponent) {
    DisjointSets sets(local.size());
    for (const auto& [edge, count] : active) sets.Union(id(edge.first), id(edge.second));
    for (std::size_t k = 0; k < local.size(); ++k) {
      if (sets.SizeOf(k) >= 3)
        segment.group_nodes.push_back(local[k]);
      else
        segment.dyadic_nodes.push_back(local[k]);
    }
    return;
  }

  std::vector<std::set<std::size_t>> adjacent(local.size());
  for (const auto& [edge, count] : active) {
    adjacent[id(edge.first)].insert(id(edge.second));
    adjacent[id(edge.second)].insert(id(edge.first));
  }
  for (std::size_t k = 0; k < local.size(); ++k) {
    bool in_triangle = false;
    for (auto u = adjacent[k].begin(); u != adjacent[k].end() && !in_triangle; ++u)
      for (auto w = std::next(u); w != adjacent[k].end(); ++w)
        if (adjacent[*u].count(*w)) {
          in_triangle = true;
          break;
        }
    if (in_triangle)
      segment.group_nodes.push_back(local[k]);
    else
      segment.dyadic_nodes.push_back(local[k]);
  }
}

}  // namespace

ContactEvent MakeContact(int sample, std::size_t a, std::size_t b,
                         std::int64_t t_start, std::int64_t t_end) {
  if (a == b) throw Error("a contact needs two distinct nodes");
  if (t_start >= t_end)
    throw Error(fmt::format("contact interval [{}, {}) is empty or inverted",
                            t_start, t_end));
  if (a > b) std::swap(a, b);
  return ContactEvent{sample, a, b, t_start, t_end, t_end - t_start};
}

bool ContactLess(const ContactEvent& x, const ContactEvent& y) {
  return std::tie(x.sample, x.node_a, x.node_b, x.t_start, x.t_end) <
         std::tie(y.sample, y.node_a, y.node_b, y.t_start, y.t_end);
}

bool ContactParseResult::has_errors() const {
  return std::any_of(issues.begin(), issues.end(), [](const RowIssue& issue) {
    return issue.severity == Severity::kError;
  });
}

ContactParseResult ParseContacts(std::istream& in, NodeSet& nodes,
                                 const ContactParseOptions& options) {
  ContactParseResult result;
  csv::Reader reader(in);
  auto header = reader.Next();
  if (!header) return result;
  if (fmt::format("{}", fmt::join(header->fields, ",")) != kContactsHeader)
    throw Error(fmt::format("line {}: contacts header must be '{}'",
                            header->line, kContactsHeader));

  auto reject = [&](std::size_t line, std::string msg) {
    result.issues.push_back({line, Severity::kError, std::move(msg)});
  };
  std::vector<std::size_t> lines;
  while (auto row = reader.Next()) {
    const auto& f = row->fields;
    if (f.size() != 5) {
      reject(row->line, fmt::format("expected 5 fields, got {}", f.size()));
      continue;
    }
    auto t_start = csv::ParseInt(f[3]);
    auto t_end = csv::ParseInt(f[4]);
    if (!t_start || !t_end) {
      reject(row->line, "timestamps must be integer seconds");
      continue;
    }
    if (*t_start >= *t_end) {
      reject(row->line, fmt::format("t_start {} is not before t_end {}",
                                    *t_start, *t_end));
      continue;
    }
    if (f[0].empty() || f[1].empty() || f[2].empty()) {
      reject(row->line, "empty identifier");
      continue;
    }
    if (f[1] == f[2]) {
      reject(row->line, "node_a equals node_b");
      continue;
    }
    std::optional<std::size_t> a, b;
    if (options.add_unknown_nodes) {
      a = nodes.Add(f[0], f[1]);
      b = nodes.Add(f[0], f[2]);
    } else {
      a = nodes.Find(f[0], f[1]);
      b = nodes.Find(f[0], f[2]);
      if (!a || !b) {
        reject(row->line, fmt::format("unknown node '{}' in sample '{}'",
                                      a ? f[2] : f[1], f[0]));
        continue;
      }
    }
    result.events.push_back(
        MakeContact(nodes.group(*a), *a, *b, *t_start, *t_end));
    lines.push_back(row->line);
  }

  std::vector<std::size_t> order(result.events.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return ContactLess(result.events[x], result.events[y]);
  });
  std::vector<ContactEvent> sorted;
  sorted.reserve(order.size());
  for (std::size_t k : order) {
    if (!sorted.empty() && sorted.back() == result.events[k]) {
      result.issues.push_back({lines[k], Severity::kWarning,
                               "duplicate event dropped"});
      continue;
    }
    sorted.push_back(result.events[k]);
  }
  result.events = std::move(sorted);
  std::stable_sort(result.issues.begin(), result.issues.end(),
                   [](const RowIssue& x, const RowIssue& y) { return x.line < y.line; });
  return result;
}

void WriteContacts(std::ostream& out, std::span<const ContactEvent> events,
                   const NodeSet& nodes) {
  out << kContactsHeader << '\n';
  for (const auto& e : events) {
    const auto& a = nodes.key(e.node_a);
    const auto& b = nodes.key(e.node_b);
    out << csv::Escape(a.sample) << ',' << csv::Escape(a.node) << ','
        << csv::Escape(b.node) << ',' << e.t_start << ',' << e.t_end << '\n';
  }
}

std::vector<ContactEvent> MergeEvents(std::span<const ContactEvent> events,
                                      std::int64_t gap) {
  if (gap < 0) throw Error("merge gap must be non-negative");
  std::vector<ContactEvent> sorted(events.begin(), events.end());
  std::sort(sorted.begin(), sorted.end(), ContactLess);

  std::vector<ContactEvent> out;
  out.reserve(sorted.size());
  for (const auto& e : sorted) {
    if (!out.empty() && SameDyad(out.back(), e) &&
        e.t_start - out.back().t_end <= gap) {
      ContactEvent& cur = out.back();
      // Sorted by start, so only the part past the current end is new.
      const std::int64_t fresh_from = std::max(e.t_start, cur.t_end);
      if (e.t_end > fresh_from) {
        cur.covered += std::min(e.covered, e.t_end - fresh_from);
      }
      cur.t_end = std::max(cur.t_end, e.t_end);
      continue;
    }
    out.push_back(e);
  }
  return out;
}

DyadicMatrix AggregateDurations(std::span<const ContactEvent> events,
                                std::size_t node_count, DurationMode mode) {
  DyadicMatrix m(node_count, "seconds");
  for (const auto& e : events) {
    if (e.node_a >= node_count || e.node_b >= node_count)
      throw Error(fmt::format("event refers to unknown node index {}",
                              std::max(e.node_a, e.node_b)));
    const double d = mode == DurationMode::kSpan ? e.span() : e.covered;
    m.Set(e.node_a, e.node_b, m.value(e.node_a, e.node_b) + d);
  }
  return m;
}

DyadicMatrix NormalizePerHour(const DyadicMatrix& seconds, double window_seconds) {
  if (!(window_seconds > 0)) throw Error("normalization window must be positive");
  const double scale = 3600.0 / window_seconds;
  DyadicMatrix out = seconds;
  out.set_label("seconds_per_hour");
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j)
      if (i != j && !seconds.missing(i, j)) out.Set(i, j, seconds.value(i, j) * scale);
  return out;
}

DyadicMatrix NormalizePerHour(const DyadicMatrix& seconds,
                              std::span<const int> groups,
                              std::span<const double> window_seconds) {
  if (groups.size() != seconds.size())
    throw Error("group labels do not match matrix size");
  DyadicMatrix out = seconds;
  out.set_label("seconds_per_hour");
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (i == j || seconds.missing(i, j)) continue;
      const double v = seconds.value(i, j);
      if (groups[i] != groups[j]) {
        if (v != 0) throw Error("nonzero duration between nodes of different samples");
        continue;
      }
      const auto g = static_cast<std::size_t>(groups[i]);
      if (g >= window_seconds.size()) throw Error("missing window for a sample");
      if (v == 0) continue;
      if (!(window_seconds[g] > 0))
        throw Error("normalization window must be positive");
      out.Set(i, j, v * 3600.0 / window_seconds[g]);
    }
  }
  return out;
}

std::vector<std::int64_t> SampleWindows(std::span<const ContactEvent> events,
                                        std::size_t group_count) {
  std::vector<std::int64_t> first(group_count, 0), last(group_count, 0);
  std::vector<bool> seen(group_count, false);
  for (const auto& e : events) {
    const auto g = static_cast<std::size_t>(e.sample);
    if (g >= group_count) throw Error("event sample outside group range");
    if (!seen[g]) {
      first[g] = e.t_start;
      last[g] = e.t_end;
      seen[g] = true;
    } else {
      first[g] = std::min(first[g], e.t_start);
      last[g] = std::max(last[g], e.t_end);
    }
  }
  std::vector<std::int64_t> window(group_count, 0);
  for (std::size_t g = 0; g < group_count; ++g) window[g] = last[g] - first[g];
  return window;
}

CopresenceResult ClassifyCopresence(std::span<const ContactEvent> events,
                                    std::size_t node_count, GroupRule rule) {
  CopresenceResult result;
  result.exposures.resize(node_count);
  for (std::size_t i = 0; i < node_count; ++i) result.exposures[i].node = i;

  std::map<int, std::vector<const ContactEvent*>> by_sample;
  for (const auto& e : events) {
    if (e.node_a >= node_count || e.node_b >= node_count)
      throw Error("event refers to an unknown node index");
    by_sample[e.sample].push_back(&e);
  }

  for (auto& [sample, list] : by_sample) {
    std::vector<std::int64_t> bounds;
    bounds.reserve(list.size() * 2);
    for (const auto* e : list) {
      bounds.push_back(e->t_start);
      bounds.push_back(e->t_end);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    auto starts = list;
    auto ends = list;
    std::sort(starts.begin(), starts.end(),
              [](auto* x, auto* y) { return x->t_start < y->t_start; });
    std::sort(ends.begin(), ends.end(),
              [](auto* x, auto* y) { return x->t_end < y->t_end; });

    std::map<Edge, int> active;
    std::size_t next_start = 0, next_end = 0;
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
      const std::int64_t t = bounds[k];
      while (next_end < ends.size() && ends[next_end]->t_end <= t) {
        const Edge edge{ends[next_end]->node_a, ends[next_end]->node_b};
        if (--active[edge] == 0) active.erase(edge);
        ++next_end;
      }
      while (next_start < starts.size() && starts[next_start]->t_start <= t) {
        ++active[{starts[next_start]->node_a, starts[next_start]->node_b}];
        ++next_start;
      }
      if (active.empty()) continue;

      CopresenceSegment segment{sample, t, bounds[k + 1], {}, {}};
      ClassifyActive(active, rule, segment);
      const std::int64_t length = segment.t_end - segment.t_start;
      for (std::size_t node : segment.dyadic_nodes)
        result.exposures[node].seconds_dyadic += length;
      for (std::size_t node : segment.group_nodes)
        result.exposures[node].seconds_group += length;
      result.timeline.push_back(std::move(segment));
    }
  }

  for (auto& x : result.exposures) {
    x.seconds_total = x.seconds_dyadic + x.seconds_group;
    if (x.seconds_total > 0)
      x.ratio_dyadic = static_cast<double>(x.seconds_dyadic) /
                       static_cast<double>(x.seconds_total);
  }
  return result;
}

void WriteExposureReport(std::ostream& out,
                         std::span<const NodeExposure> exposures,
                         const NodeSet& nodes) {
  out << "sample_id,node_id,seconds_dyadic,seconds_group,seconds_total,ratio_dyadic\n";
  for (const auto& x : exposures) {
    const auto& key = nodes.key(x.node);
    out << csv::Escape(key.sample) << ',' << csv::Escape(key.node) << ','
        << x.seconds_dyadic << ',' << x.seconds_group << ',' << x.seconds_total
        << ',';
    if (x.ratio_dyadic) out << fmt::format("{:.17g}", *x.ratio_dyadic);
    out << '\n';
  }
}

std::vector<NodeExposure> ReadExposureReport(std::istream& in,
                                             const NodeSet& nodes) {
  csv::Reader reader(in);
  auto header = reader.Next();
  if (!header) throw Error("exposure report is empty");
  if (header->fields.size() != 6 || header->fields[0] != "sample_id" ||
      header->fields[1] != "node_id")
    throw Error("unexpected exposure report header");
  std::vector<NodeExposure> out(nodes.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].node = i;
  while (auto row = reader.Next()) {
    const auto& f = row->fields;
    if (f.size() != 6) throw Error(fmt::format("line {}: expected 6 fields", row->line));
    auto idx = nodes.Find(f[0], f[1]);
    if (!idx) continue;  // node outside the analysed panel
    auto dy = csv::ParseInt(f[2]);
    auto gr = csv::ParseInt(f[3]);
    auto to = csv::ParseInt(f[4]);
    if (!dy || !gr || !to || *dy + *gr != *to)
      throw Error(fmt::format("line {}: inconsistent exposure row", row->line));
    NodeExposure& x = out[*idx];
    x.seconds_dyadic = *dy;
    x.seconds_group = *gr;
    x.seconds_total = *to;
    if (!f[5].empty()) x.ratio_dyadic = csv::ParseDouble(f[5]);
  }
  return out;
}

}  // namespace qapnet
