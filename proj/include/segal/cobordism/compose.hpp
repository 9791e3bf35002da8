#ifndef SEGAL_COBORDISM_COMPOSE_HPP
#define SEGAL_COBORDISM_COMPOSE_HPP

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "segal/cobordism/types.hpp"
#include "segal/error.hpp"

namespace segal::cobordism {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

inline void require_valid(const OCType& t, const char* which) {
  const auto report = validate_type(t);
  if (report.ok()) return;
  std::string msg = std::string(which) + " is not a valid type:";
  for (const auto& v : report.violations) msg += " [" + v.code + ": " + v.detail + "]";
  throw Error(ErrorKind::InvalidType, msg);
}

// Position of one boundary-cycle slot inside a two-piece gluing.
struct Slot {
  int piece;  // 0 = first factor, 1 = second factor
  std::size_t component;
  std::size_t cycle;
  std::size_t pos;
  auto operator<=>(const Slot&) const = default;
};

}  // namespace detail

/// Glues the outgoing boundary of `t1` to the incoming boundary of `t2`.
///
/// Components are merged by union-find over shared boundaries. Cycles are
/// spliced: walking a cycle of t1 into an interval that gets glued, the walk
/// continues on t2 along the free arc that follows the partner interval, and
/// symmetrically. Euler characteristics add, minus one per glued interval
/// (gluing along a circle does not change it), and the genus is recovered
/// from chi and the surviving boundary count.
inline OCType compose_types(const OCType& t1, const OCType& t2) {
  detail::require_valid(t1, "first factor");
  detail::require_valid(t2, "second factor");
  if (t1.label_count != t2.label_count || !(t1.out == t2.in))
    throw Error(ErrorKind::SignatureMismatch,
                "outgoing signature of the first factor differs from the incoming signature of "
                "the second");

  const std::array<const OCType*, 2> piece{&t1, &t2};
  const std::size_t k1 = t1.components.size();
  const std::size_t total = k1 + t2.components.size();
  auto node = [&](int p, std::size_t c) { return p == 0 ? c : k1 + c; };

  // Where the glued closed circles and open intervals live on each side.
  std::map<int, std::size_t> closed_owner[2];
  std::map<int, detail::Slot> open_slot[2];
  for (int p = 0; p < 2; ++p) {
    const Direction glued_dir = p == 0 ? Direction::Out : Direction::In;
    for (std::size_t c = 0; c < piece[p]->components.size(); ++c) {
      const auto& comp = piece[p]->components[c];
      for (int id : p == 0 ? comp.closed_out : comp.closed_in) closed_owner[p][id] = c;
      for (std::size_t y = 0; y < comp.cycles.size(); ++y)
        for (std::size_t i = 0; i < comp.cycles[y].entries.size(); ++i)
          if (comp.cycles[y].entries[i].dir == glued_dir)
            open_slot[p][comp.cycles[y].entries[i].id] = {p, c, y, i};
    }
  }

  detail::UnionFind uf(total);
  for (const auto& [id, c] : closed_owner[0]) uf.unite(node(0, c), node(1, closed_owner[1].at(id)));
  for (const auto& [id, s] : open_slot[0])
    uf.unite(node(0, s.component), node(1, open_slot[1].at(id).component));

  auto cycle_at = [&](const detail::Slot& s) -> const BoundaryCycle& {
    return piece[s.piece]->components[s.component].cycles[s.cycle];
  };
  auto is_glued = [](int p, const IntervalRef& e) {
    return (p == 0 && e.dir == Direction::Out) || (p == 1 && e.dir == Direction::In);
  };

  // Walk every free arc ("gap" after slot pos) exactly once. A token stream
  // alternates between gap labels and surviving entries.
  struct Token {
    bool is_entry;
    IntervalRef entry;
    Label label;
  };
  std::map<detail::Slot, bool> visited;
  std::map<std::size_t, std::vector<BoundaryCycle>> cycles_of_root;
  std::map<std::size_t, std::vector<Label>> free_of_root;

  for (int p = 0; p < 2; ++p) {
    for (std::size_t c = 0; c < piece[p]->components.size(); ++c) {
      const auto& comp = piece[p]->components[c];
      for (std::size_t y = 0; y < comp.cycles.size(); ++y) {
        const auto& cyc = comp.cycles[y];
        if (cyc.entries.empty()) {
          free_of_root[uf.find(node(p, c))].push_back(cyc.free_arc_labels.front());
          continue;
        }
        for (std::size_t g = 0; g < cyc.entries.size(); ++g) {
          detail::Slot start{p, c, y, g};
          if (visited[start]) continue;
          std::vector<Token> tokens;
          detail::Slot cur = start;
          while (!visited[cur]) {
            visited[cur] = true;
            const auto& here = cycle_at(cur);
            tokens.push_back({false, {}, here.free_arc_labels[cur.pos]});
            const std::size_t next = (cur.pos + 1) % here.entries.size();
            const IntervalRef& e = here.entries[next];
            if (is_glued(cur.piece, e)) {
              cur = open_slot[1 - cur.piece].at(e.id);
            } else {
              tokens.push_back({true, e, 0});
              cur.pos = next;
            }
          }
          if (!(cur == start))
            throw Error(ErrorKind::InternalInconsistency, "splice walk did not close up");

          const std::size_t root = uf.find(node(p, c));
          auto first_entry = std::find_if(tokens.begin(), tokens.end(),
                                          [](const Token& t) { return t.is_entry; });
          if (first_entry == tokens.end()) {
            for (const auto& t : tokens)
              if (t.label != tokens.front().label)
                throw Error(ErrorKind::InternalInconsistency,
                            "free arcs with different labels merged into one circle");
            free_of_root[root].push_back(tokens.front().label);
            continue;
          }
          std::rotate(tokens.begin(), first_entry, tokens.end());
          BoundaryCycle merged;
          std::optional<Label> arc;
          for (const auto& t : tokens) {
            if (t.is_entry) {
              if (!merged.entries.empty()) merged.free_arc_labels.push_back(*arc);
              merged.entries.push_back(t.entry);
              arc.reset();
            } else {
              if (arc && *arc != t.label)
                throw Error(ErrorKind::InternalInconsistency,
                            "free arcs with different labels spliced together");
              arc = t.label;
            }
          }
          merged.free_arc_labels.push_back(*arc);
          cycles_of_root[root].push_back(std::move(merged));
        }
      }
    }
  }

  std::map<std::size_t, ComponentData> merged;
  std::map<std::size_t, int> chi;
  for (int p = 0; p < 2; ++p) {
    for (std::size_t c = 0; c < piece[p]->components.size(); ++c) {
      const auto& comp = piece[p]->components[c];
      const std::size_t root = uf.find(node(p, c));
      auto& m = merged[root];
      chi[root] += euler_characteristic(comp);
      if (p == 0) m.closed_in.insert(m.closed_in.end(), comp.closed_in.begin(), comp.closed_in.end());
      if (p == 1)
        m.closed_out.insert(m.closed_out.end(), comp.closed_out.begin(), comp.closed_out.end());
      m.free_circles.insert(m.free_circles.end(), comp.free_circles.begin(), comp.free_circles.end());
    }
  }
  for (const auto& [id, s] : open_slot[0]) --chi[uf.find(node(0, s.component))];
  for (auto& [root, cycles] : cycles_of_root) merged[root].cycles = std::move(cycles);
  for (auto& [root, labels] : free_of_root)
    merged[root].free_circles.insert(merged[root].free_circles.end(), labels.begin(), labels.end());

  OCType out;
  out.label_count = t1.label_count;
  out.in = t1.in;
  out.out = t2.out;
  for (auto& [root, m] : merged) {
    m.boundary_circles = m.assigned_circles();
    const int twice_genus = 2 - chi[root] - m.boundary_circles;
    if (twice_genus < 0 || twice_genus % 2 != 0)
      throw Error(ErrorKind::InternalInconsistency,
                  "recovered 2g = " + std::to_string(twice_genus) + " for a merged component");
    m.genus = twice_genus / 2;
    out.components.push_back(std::move(m));
  }
  return canonical(out);
}

/// The monoidal unit: no components, empty signatures.
inline OCType empty_type(int label_count = 1) {
  OCType t;
  t.label_count = label_count;
  return t;
}

/// Places t2 beside t1, shifting t2's identifiers past t1's.
inline OCType disjoint_union(const OCType& t1, const OCType& t2) {
  if (t1.label_count != t2.label_count)
    throw Error(ErrorKind::SignatureMismatch, "label sets differ");
  OCType out;
  out.label_count = t1.label_count;
  auto concat = [](const ObjectSignature& a, const ObjectSignature& b) {
    ObjectSignature s = a;
    s.closed_count += b.closed_count;
    s.open_count += b.open_count;
    s.source_labels.insert(s.source_labels.end(), b.source_labels.begin(), b.source_labels.end());
    s.target_labels.insert(s.target_labels.end(), b.target_labels.begin(), b.target_labels.end());
    return s;
  };
  out.in = concat(t1.in, t2.in);
  out.out = concat(t1.out, t2.out);
  out.components = t1.components;
  for (ComponentData c : t2.components) {
    for (int& id : c.closed_in) id += t1.in.closed_count;
    for (int& id : c.closed_out) id += t1.out.closed_count;
    for (auto& cyc : c.cycles)
      for (auto& e : cyc.entries)
        e.id += e.dir == Direction::In ? t1.in.open_count : t1.out.open_count;
    out.components.push_back(std::move(c));
  }
  return canonical(out);
}

enum class Stability { Stable, Unstable, Special };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "STABLE";
    case Stability::Unstable: return "UNSTABLE";
    case Stability::Special: return "SPECIAL";
  }
  return "?";
}

struct StabilityReport {
  std::vector<Stability> components;  // parallel to the input's component list

  bool all_stable() const {
    return std::all_of(components.begin(), components.end(),
                       [](Stability s) { return s == Stability::Stable; });
  }
  std::size_t count(Stability s) const {
    return static_cast<std::size_t>(std::count(components.begin(), components.end(), s));
  }
};

inline Stability component_stability(const ComponentData& c) {
  std::size_t free_only_circles = c.free_circles.size();
  bool has_free_arc = false;
  for (const auto& cyc : c.cycles) {
    if (cyc.entries.empty())
      ++free_only_circles;
    else
      has_free_arc = true;
  }
  const bool parametrized = !c.closed_in.empty() || !c.closed_out.empty() || has_free_arc;
  if (!parametrized && c.genus == 0 && (free_only_circles == 1 || free_only_circles == 2))
    return Stability::Special;
  if (c.closed_in.empty() && !has_free_arc && free_only_circles == 0) return Stability::Unstable;
  return Stability::Stable;
}

/// Special components (free discs and annuli) are reported, never removed.
inline StabilityReport is_stable(const OCType& t) {
  StabilityReport r;
  for (const auto& c : t.components) r.components.push_back(component_stability(c));
  return r;
}

}  // namespace segal::cobordism

#endif  // SEGAL_COBORDISM_COMPOSE_HPP
