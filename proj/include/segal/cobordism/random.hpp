#ifndef SEGAL_COBORDISM_RANDOM_HPP
#define SEGAL_COBORDISM_RANDOM_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "segal/cobordism/types.hpp"

namespace segal::cobordism {

struct RandomTypeOptions {
  int max_components = 4;
  int max_items = 6;  // closed + open boundaries on both sides + free circles
  int max_genus = 2;
  int label_count = 1;
  int max_in_closed = 2;
  int max_in_open = 2;
};

namespace detail {

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  if (hi < lo) return lo;
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

}  // namespace detail

inline ObjectSignature random_signature(std::mt19937_64& rng, const RandomTypeOptions& opt) {
  ObjectSignature s;
  s.closed_count = detail::uniform_int(rng, 0, opt.max_in_closed);
  s.open_count = detail::uniform_int(rng, 0, opt.max_in_open);
  for (int i = 0; i < s.open_count; ++i) {
    s.source_labels.push_back(detail::uniform_int(rng, 0, opt.label_count - 1));
    s.target_labels.push_back(detail::uniform_int(rng, 0, opt.label_count - 1));
  }
  return s;
}

/// Random valid type with the given incoming signature. The item budget is
/// respected except where an extra outgoing interval is the only way to
/// close a cycle with consistent labels.
inline OCType random_type(std::mt19937_64& rng, const ObjectSignature& in,
                          const RandomTypeOptions& opt) {
  using detail::coin;
  using detail::uniform_int;
  const int L = opt.label_count;
  auto label = [&] { return uniform_int(rng, 0, L - 1); };
  int budget = opt.max_items - in.closed_count - in.open_count;

  struct OutInterval {
    Label s, t;
  };
  std::vector<OutInterval> outs;  // temporary ids index this list
  std::vector<BoundaryCycle> cycles;

  std::vector<int> pool(static_cast<std::size_t>(in.open_count));
  for (int i = 0; i < in.open_count; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::shuffle(pool.begin(), pool.end(), rng);

  auto new_out = [&](Label s, Label t) {
    outs.push_back({s, t});
    return IntervalRef{Direction::Out, static_cast<int>(outs.size()) - 1};
  };

  while (!pool.empty()) {
    const int first = pool.back();
    pool.pop_back();
    BoundaryCycle cyc;
    cyc.entries.push_back({Direction::In, first});
    const Label first_before = in.target_labels[static_cast<std::size_t>(first)];
    Label arc = in.source_labels[static_cast<std::size_t>(first)];
    for (;;) {
      std::vector<std::size_t> matching;
      for (std::size_t k = 0; k < pool.size(); ++k)
        if (in.target_labels[static_cast<std::size_t>(pool[k])] == arc) matching.push_back(k);
      const bool can_close = arc == first_before;
      const bool can_out = budget > 0;
      if (can_close && (coin(rng, 0.45) || (matching.empty() && !can_out))) {
        cyc.free_arc_labels.push_back(arc);
        break;
      }
      if (!matching.empty() && (!can_out || coin(rng, 0.7))) {
        const std::size_t k = matching[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(matching.size()) - 1))];
        const int id = pool[k];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
        cyc.free_arc_labels.push_back(arc);
        cyc.entries.push_back({Direction::In, id});
        arc = in.source_labels[static_cast<std::size_t>(id)];
        continue;
      }
      if (can_out) {
        --budget;
        const Label t = label();
        cyc.free_arc_labels.push_back(arc);
        cyc.entries.push_back(new_out(arc, t));
        arc = t;
        continue;
      }
      // Forced closer, over budget.
      cyc.free_arc_labels.push_back(arc);
      cyc.entries.push_back(new_out(arc, first_before));
      cyc.free_arc_labels.push_back(first_before);
      break;
    }
    cycles.push_back(std::move(cyc));
  }

  // Cycles carrying only outgoing intervals.
  while (budget > 0 && coin(rng, 0.35)) {
    const int k = uniform_int(rng, 1, std::min(budget, 2));
    budget -= k;
    BoundaryCycle cyc;
    for (int i = 0; i < k; ++i) cyc.free_arc_labels.push_back(label());
    for (int i = 0; i < k; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      cyc.entries.push_back(new_out(cyc.free_arc_labels[(idx + cyc.free_arc_labels.size() - 1) %
                                                        cyc.free_arc_labels.size()],
                                    cyc.free_arc_labels[idx]));
    }
    cycles.push_back(std::move(cyc));
  }

  std::vector<Label> free;
  while (budget > 0 && coin(rng, 0.2)) {
    --budget;
    free.push_back(label());
  }
  const int closed_out = budget > 0 ? uniform_int(rng, 0, std::min(budget, 2)) : 0;

  // Random identifiers for the outgoing side.
  std::vector<int> open_ids(outs.size()), closed_ids(static_cast<std::size_t>(closed_out));
  for (std::size_t i = 0; i < open_ids.size(); ++i) open_ids[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < closed_ids.size(); ++i) closed_ids[i] = static_cast<int>(i);
  std::shuffle(open_ids.begin(), open_ids.end(), rng);
  std::shuffle(closed_ids.begin(), closed_ids.end(), rng);

  OCType t;
  t.label_count = L;
  t.in = in;
  t.out.closed_count = closed_out;
  t.out.open_count = static_cast<int>(outs.size());
  t.out.source_labels.assign(outs.size(), 0);
  t.out.target_labels.assign(outs.size(), 0);
  for (std::size_t i = 0; i < outs.size(); ++i) {
    t.out.source_labels[static_cast<std::size_t>(open_ids[i])] = outs[i].s;
    t.out.target_labels[static_cast<std::size_t>(open_ids[i])] = outs[i].t;
  }
  for (auto& cyc : cycles)
    for (auto& e : cyc.entries)
      if (e.dir == Direction::Out) e.id = open_ids[static_cast<std::size_t>(e.id)];

  const int k = uniform_int(rng, 1, opt.max_components);
  std::vector<ComponentData> comps(static_cast<std::size_t>(k));
  auto pick = [&]() -> ComponentData& { return comps[static_cast<std::size_t>(uniform_int(rng, 0, k - 1))]; };
  for (int id = 0; id < in.closed_count; ++id) pick().closed_in.push_back(id);
  for (int id : closed_ids) pick().closed_out.push_back(id);
  for (auto& cyc : cycles) pick().cycles.push_back(std::move(cyc));
  for (Label l : free) pick().free_circles.push_back(l);

  for (auto& c : comps) {
    if (c.assigned_circles() == 0 && !coin(rng, 0.1)) continue;
    c.genus = uniform_int(rng, 0, opt.max_genus);
    c.boundary_circles = c.assigned_circles();
    t.components.push_back(std::move(c));
  }
  return canonical(t);
}

}  // namespace segal::cobordism

#endif  // SEGAL_COBORDISM_RANDOM_HPP
