#ifndef SEGAL_COBORDISM_TYPES_HPP
#define SEGAL_COBORDISM_TYPES_HPP

// Discrete isomorphism types of open-closed surfaces.
//
// A type from (C_-, O_-) to (C_+, O_+) is an unordered list of connected
// components. Each component records its genus, its number of boundary
// circles, and which parametrized boundary pieces live on it: whole closed
// circles (by position in the in/out signature) and boundary cycles. A cycle
// lists the open intervals met when walking once around a boundary circle,
// with the free (unparametrized) arcs between them carrying D-brane labels.
//
// Orientation conventions used throughout:
//   * a cycle is walked with the surface interior on the left;
//   * an outgoing interval is walked from its parameter 0 to 1, an incoming
//     interval from 1 to 0;
//   * free_arc_labels[i] labels the arc that follows entries[i].
// Hence an outgoing entry at position i takes its source label from arc i-1
// and its target label from arc i; an incoming entry the other way round.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace segal::cobordism {

using Label = int;

struct ObjectSignature {
  int closed_count = 0;
  int open_count = 0;
  std::vector<Label> source_labels;
  std::vector<Label> target_labels;

  /// Signature whose open boundaries all carry label 0.
  static ObjectSignature unlabeled(int closed, int open) {
    return {closed, open, std::vector<Label>(static_cast<std::size_t>(open), 0),
            std::vector<Label>(static_cast<std::size_t>(open), 0)};
  }

  auto operator<=>(const ObjectSignature&) const = default;
};

enum class Direction { In, Out };

struct IntervalRef {
  Direction dir = Direction::In;
  int id = 0;

  auto operator<=>(const IntervalRef&) const = default;
};

struct BoundaryCycle {
  std::vector<IntervalRef> entries;
  std::vector<Label> free_arc_labels;

  auto operator<=>(const BoundaryCycle&) const = default;
};

struct ComponentData {
  int genus = 0;
  int boundary_circles = 0;
  std::vector<int> closed_in;
  std::vector<int> closed_out;
  std::vector<BoundaryCycle> cycles;
  std::vector<Label> free_circles;

  /// Number of boundary circles implied by the assigned boundary data.
  int assigned_circles() const {
    return static_cast<int>(closed_in.size() + closed_out.size() + cycles.size() +
                            free_circles.size());
  }

  auto operator<=>(const ComponentData&) const = default;
};

struct OCType {
  int label_count = 1;
  ObjectSignature in;
  ObjectSignature out;
  std::vector<ComponentData> components;

  auto operator<=>(const OCType&) const = default;
};

inline int euler_characteristic(const ComponentData& c) {
  return 2 - 2 * c.genus - c.boundary_circles;
}

inline int euler_characteristic(const OCType& t) {
  int chi = 0;
  for (const auto& c : t.components) chi += euler_characteristic(c);
  return chi;
}

/// Total count of parametrized and free boundary pieces.
inline int boundary_items(const OCType& t) {
  int free = 0;
  for (const auto& c : t.components) free += static_cast<int>(c.free_circles.size());
  return t.in.closed_count + t.in.open_count + t.out.closed_count + t.out.open_count + free;
}

/// Source/target label an entry of `cycle` at `pos` must carry.
inline Label arc_before(const BoundaryCycle& cycle, std::size_t pos) {
  const std::size_t k = cycle.free_arc_labels.size();
  return cycle.free_arc_labels[(pos + k - 1) % k];
}
inline Label arc_after(const BoundaryCycle& cycle, std::size_t pos) {
  return cycle.free_arc_labels[pos];
}
inline Label start_label(const BoundaryCycle& cycle, std::size_t pos) {
  return cycle.entries[pos].dir == Direction::Out ? arc_before(cycle, pos) : arc_after(cycle, pos);
}
inline Label end_label(const BoundaryCycle& cycle, std::size_t pos) {
  return cycle.entries[pos].dir == Direction::Out ? arc_after(cycle, pos) : arc_before(cycle, pos);
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
  }
};

namespace detail {

inline void check_signature(const ObjectSignature& sig, int label_count, const char* side,
                            ValidationReport& report) {
  const std::string where = side;
  if (sig.closed_count < 0 || sig.open_count < 0)
    report.violations.push_back({"negative count", where + " signature has a negative count"});
  if (static_cast<int>(sig.source_labels.size()) != sig.open_count ||
      static_cast<int>(sig.target_labels.size()) != sig.open_count)
    report.violations.push_back(
        {"signature length mismatch", where + " label lists must have length open_count"});
  for (const auto* labels : {&sig.source_labels, &sig.target_labels})
    for (Label l : *labels)
      if (l < 0 || l >= label_count)
        report.violations.push_back(
            {"label out of range", where + " signature label " + std::to_string(l)});
}

inline void check_id_coverage(const std::vector<int>& seen_counts, const std::string& what,
                              ValidationReport& report) {
  for (std::size_t id = 0; id < seen_counts.size(); ++id) {
    if (seen_counts[id] == 0)
      report.violations.push_back({"unassigned boundary", what + " " + std::to_string(id)});
    else if (seen_counts[id] > 1)
      report.violations.push_back({"duplicate boundary", what + " " + std::to_string(id)});
  }
}

}  // namespace detail

/// Reports every violated well-formedness condition; an empty report means
/// the type is valid.
inline ValidationReport validate_type(const OCType& t) {
  ValidationReport report;
  if (t.label_count < 1) report.violations.push_back({"label set empty", "label_count < 1"});
  detail::check_signature(t.in, t.label_count, "in", report);
  detail::check_signature(t.out, t.label_count, "out", report);

  auto sized = [](int n) { return std::vector<int>(static_cast<std::size_t>(std::max(n, 0)), 0); };
  auto closed_in = sized(t.in.closed_count), closed_out = sized(t.out.closed_count);
  auto open_in = sized(t.in.open_count), open_out = sized(t.out.open_count);

  auto bump = [&](std::vector<int>& seen, int id, const std::string& what) {
    if (id < 0 || id >= static_cast<int>(seen.size())) {
      report.violations.push_back({"id out of range", what + " " + std::to_string(id)});
      return false;
    }
    ++seen[static_cast<std::size_t>(id)];
    return true;
  };

  for (std::size_t ci = 0; ci < t.components.size(); ++ci) {
    const auto& c = t.components[ci];
    const std::string comp = "component " + std::to_string(ci);
    if (c.genus < 0) report.violations.push_back({"negative genus", comp});
    if (c.boundary_circles < 0) report.violations.push_back({"boundary count mismatch", comp + ": n < 0"});
    if (c.boundary_circles != c.assigned_circles())
      report.violations.push_back(
          {"boundary count mismatch", comp + ": n=" + std::to_string(c.boundary_circles) +
                                          " but " + std::to_string(c.assigned_circles()) +
                                          " circles assigned"});
    for (int id : c.closed_in) bump(closed_in, id, "closed in");
    for (int id : c.closed_out) bump(closed_out, id, "closed out");
    for (Label l : c.free_circles)
      if (l < 0 || l >= t.label_count)
        report.violations.push_back({"label out of range", comp + " free circle"});

    for (std::size_t k = 0; k < c.cycles.size(); ++k) {
      const auto& cyc = c.cycles[k];
      const std::string where = comp + " cycle " + std::to_string(k);
      const std::size_t want = cyc.entries.empty() ? 1 : cyc.entries.size();
      if (cyc.free_arc_labels.size() != want) {
        report.violations.push_back({"cycle label count", where});
        continue;
      }
      for (Label l : cyc.free_arc_labels)
        if (l < 0 || l >= t.label_count)
          report.violations.push_back({"label out of range", where});
      for (std::size_t pos = 0; pos < cyc.entries.size(); ++pos) {
        const auto& e = cyc.entries[pos];
        const bool in = e.dir == Direction::In;
        const ObjectSignature& sig = in ? t.in : t.out;
        if (!bump(in ? open_in : open_out, e.id, in ? "open in" : "open out")) continue;
        const auto id = static_cast<std::size_t>(e.id);
        if (id >= sig.source_labels.size() || id >= sig.target_labels.size()) continue;
        if (start_label(cyc, pos) != sig.source_labels[id] ||
            end_label(cyc, pos) != sig.target_labels[id])
          report.violations.push_back(
              {"D-brane mismatch", where + " entry " + (in ? "in " : "out ") + std::to_string(e.id)});
      }
    }
  }
  detail::check_id_coverage(closed_in, "closed in", report);
  detail::check_id_coverage(closed_out, "closed out", report);
  detail::check_id_coverage(open_in, "open in", report);
  detail::check_id_coverage(open_out, "open out", report);
  return report;
}

// ---------------------------------------------------------------------------
// Canonical form

/// Rotates a cycle so it starts at its smallest entry; zero-entry cycles are
/// left alone (they are moved to free_circles by canonical()).
inline BoundaryCycle canonical_rotation(const BoundaryCycle& c) {
  if (c.entries.size() < 2) return c;
  const auto first = static_cast<std::size_t>(
      std::min_element(c.entries.begin(), c.entries.end()) - c.entries.begin());
  BoundaryCycle out;
  const std::size_t k = c.entries.size();
  for (std::size_t i = 0; i < k; ++i) {
    out.entries.push_back(c.entries[(first + i) % k]);
    out.free_arc_labels.push_back(c.free_arc_labels[(first + i) % k]);
  }
  return out;
}

/// Representative of the isomorphism class: components and their contents
/// sorted, cycles rotated, fully free cycles stored as free circles.
inline OCType canonical(const OCType& t) {
  OCType out = t;
  for (auto& c : out.components) {
    std::vector<BoundaryCycle> kept;
    for (const auto& cyc : c.cycles) {
      if (cyc.entries.empty() && cyc.free_arc_labels.size() == 1)
        c.free_circles.push_back(cyc.free_arc_labels.front());
      else
        kept.push_back(canonical_rotation(cyc));
    }
    c.cycles = std::move(kept);
    std::sort(c.cycles.begin(), c.cycles.end());
    std::sort(c.closed_in.begin(), c.closed_in.end());
    std::sort(c.closed_out.begin(), c.closed_out.end());
    std::sort(c.free_circles.begin(), c.free_circles.end());
  }
  std::sort(out.components.begin(), out.components.end());
  return out;
}

inline bool equivalent(const OCType& a, const OCType& b) { return canonical(a) == canonical(b); }

// ---------------------------------------------------------------------------
// Small constructors used by tests, the CLI and the shipped corpus.

/// Connected genus-g surface with the given closed circles and no open data.
inline OCType closed_surface(int genus, int closed_in, int closed_out) {
  OCType t;
  t.in = ObjectSignature::unlabeled(closed_in, 0);
  t.out = ObjectSignature::unlabeled(closed_out, 0);
  ComponentData c;
  c.genus = genus;
  for (int i = 0; i < closed_in; ++i) c.closed_in.push_back(i);
  for (int i = 0; i < closed_out; ++i) c.closed_out.push_back(i);
  c.boundary_circles = closed_in + closed_out;
  t.components.push_back(std::move(c));
  return t;
}

inline OCType cylinder() { return closed_surface(0, 1, 1); }

/// Disc whose boundary carries the given open intervals in walking order.
inline OCType open_disc(int open_in, int open_out) {
  OCType t;
  t.in = ObjectSignature::unlabeled(0, open_in);
  t.out = ObjectSignature::unlabeled(0, open_out);
  ComponentData c;
  BoundaryCycle cyc;
  for (int i = 0; i < open_in; ++i) cyc.entries.push_back({Direction::In, i});
  for (int i = 0; i < open_out; ++i) cyc.entries.push_back({Direction::Out, i});
  cyc.free_arc_labels.assign(cyc.entries.empty() ? 1 : cyc.entries.size(), 0);
  if (cyc.entries.empty())
    c.free_circles.push_back(0);
  else
    c.cycles.push_back(std::move(cyc));
  c.boundary_circles = 1;
  t.components.push_back(std::move(c));
  return t;
}

}  // namespace segal::cobordism

#endif  // SEGAL_COBORDISM_TYPES_HPP
