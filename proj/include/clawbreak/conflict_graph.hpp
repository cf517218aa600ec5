#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "clawbreak/bitset.hpp"
#include "clawbreak/errors.hpp"
#include "clawbreak/network.hpp"

namespace clawbreak {

/// One broadcast transmission: a sender plus a nonempty receiver set.
struct Transmission {
  int sender = 0;
  std::vector<int> receivers;  // sorted, nonempty, never contains sender

  bool operator==(const Transmission& o) const {
    return sender == o.sender && receivers == o.receivers;
  }
};

inline std::string to_string(const Transmission& t) {
  std::string s = "(" + std::to_string(t.sender) + ",{";
  for (std::size_t i = 0; i < t.receivers.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.receivers[i]);
  }
  return s + "})";
}

enum class WeightRule {
  kReceiverCount,  // w(v) = |J|
  kUnit,           // w(v) = 1
};

/// Weighted undirected graph over transmissions. Vertices are indexed densely;
/// adjacency is kept as bit rows. Built once from a network and then treated
/// as immutable everywhere except the claw-freeing engine, which works on its
/// own copy.
class ConflictGraph {
 public:
  ConflictGraph() = default;

  ConflictGraph(std::vector<Transmission> vertices, std::vector<double> weights)
      : vertices_(std::move(vertices)),
        weights_(std::move(weights)),
        adj_(vertices_.size(), Bits(vertices_.size())),
        degree_(vertices_.size(), 0) {
    if (weights_.size() != vertices_.size()) throw SpecViolation("weights/vertices mismatch");
    for (double w : weights_) {
      if (!(w > 0.0)) throw SpecViolation("vertex weights must be positive");
    }
  }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  std::size_t num_edges() const { return edges_; }

  const Transmission& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  const std::vector<Transmission>& vertices() const { return vertices_; }
  double weight(int v) const { return weights_[static_cast<std::size_t>(v)]; }
  const std::vector<double>& weights() const { return weights_; }

  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v)); }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }

  void add_edge(int u, int v) {
    if (u == v) throw SpecViolation("self loop");
    if (adjacent(u, v)) throw EdgeAlreadyPresent(u, v);
    adj_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
    adj_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
    ++degree_[static_cast<std::size_t>(u)];
    ++degree_[static_cast<std::size_t>(v)];
    ++edges_;
  }

  // Used by the naive ledger oracle to probe "graph plus one edge" states.
  void remove_edge(int u, int v) {
    if (!adjacent(u, v)) throw SpecViolation("edge not present");
    adj_[static_cast<std::size_t>(u)].reset(static_cast<std::size_t>(v));
    adj_[static_cast<std::size_t>(v)].reset(static_cast<std::size_t>(u));
    --degree_[static_cast<std::size_t>(u)];
    --degree_[static_cast<std::size_t>(v)];
    --edges_;
  }

  std::vector<int> neighbors_of(int v) const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(degree(v)));
    adj_[static_cast<std::size_t>(v)].for_each([&](std::size_t u) { out.push_back(static_cast<int>(u)); });
    return out;
  }

  const Bits& row(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  /// Edges as (u, v) pairs with u < v, lexicographic.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges_);
    for (int v = 0; v < num_vertices(); ++v) {
      adj_[static_cast<std::size_t>(v)].for_each([&](std::size_t u) {
        if (static_cast<int>(u) > v) out.emplace_back(v, static_cast<int>(u));
      });
    }
    return out;
  }

  /// Non-adjacent vertex pairs (u, v), u < v.
  std::vector<std::pair<int, int>> missing_edges() const {
    std::vector<std::pair<int, int>> out;
    const int n = num_vertices();
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (!adjacent(u, v)) out.emplace_back(u, v);
      }
    }
    return out;
  }

  double total_weight(const std::vector<int>& members) const {
    double w = 0.0;
    for (int v : members) w += weight(v);
    return w;
  }

 private:
  std::vector<Transmission> vertices_;
  std::vector<double> weights_;
  std::vector<Bits> adj_;
  std::vector<int> degree_;
  std::size_t edges_ = 0;
};

/// All broadcast transmissions of the network: for each transceiver, every
/// nonempty subset of its receiver candidates. Deterministic order: sender id
/// ascending, then subset bitmask ascending over the sorted candidate list.
/// Throws NeighborCapExceeded before materializing an oversized power set.
inline std::vector<Transmission> enumerate_transmissions(const Network& net) {
  std::vector<int> ids;
  ids.reserve(static_cast<std::size_t>(net.size()));
  for (const Transceiver& t : net.transceivers()) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());

  std::vector<Transmission> out;
  for (int id : ids) {
    const std::vector<int> nbr = neighbors(net, id);
    const int m = static_cast<int>(nbr.size());
    if (m > net.rules().neighbor_cap) {
      throw NeighborCapExceeded(id, m, net.rules().neighbor_cap);
    }
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      Transmission t;
      t.sender = id;
      for (int b = 0; b < m; ++b) {
        if (mask & (1u << b)) t.receivers.push_back(nbr[static_cast<std::size_t>(b)]);
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace detail {

inline bool receiver_overlap(const Transmission& a, const Transmission& b) {
  // both receiver lists are sorted
  auto i = a.receivers.begin();
  auto j = b.receivers.begin();
  while (i != a.receivers.end() && j != b.receivers.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

inline bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

// Protocol-model violation: transmitter `tx` sits within the guarded distance
// of some receiver of `victim`.
inline bool protocol_hit(const Network& net, int tx, const Transmission& victim, double guard) {
  const Transceiver& t = net.at(tx);
  const Transceiver& own = net.at(victim.sender);
  for (int j : victim.receivers) {
    const Transceiver& r = net.at(j);
    if (distance(t, r) <= (1.0 + guard) * distance(own, r)) return true;
  }
  return false;
}

}  // namespace detail

/// True when the two transmissions cannot share a time slot under the given
/// rule set. Symmetric in its transmission arguments.
inline bool conflicts(const ScenarioRules& rules, const Network& net, const Transmission& s1,
                      const Transmission& s2) {
  if (s1.sender == s2.sender) return true;
  switch (rules.rule_set) {
    case RuleSet::kLineProtocol:
      if (detail::contains(s2.receivers, s1.sender)) return true;  // TDD
      if (detail::contains(s1.receivers, s2.sender)) return true;
      if (detail::receiver_overlap(s1, s2)) return true;
      if (detail::protocol_hit(net, s2.sender, s1, rules.guard_zone)) return true;
      if (detail::protocol_hit(net, s1.sender, s2, rules.guard_zone)) return true;
      return false;
    case RuleSet::kTreeHop:
      if (detail::contains(s2.receivers, s1.sender)) return true;
      if (detail::contains(s1.receivers, s2.sender)) return true;
      if (detail::receiver_overlap(s1, s2)) return true;
      if (net.is_child_of(s1.sender, s2.sender)) return true;
      if (net.is_child_of(s2.sender, s1.sender)) return true;
      return false;
    case RuleSet::kTreeFullDuplex:
      return detail::receiver_overlap(s1, s2);
    case RuleSet::kDirectionalProtocol:
      // Full duplex: no sender-in-receiver-set condition. Interference is the
      // plain protocol inequality; the antenna pattern already shaped the
      // receiver sets.
      if (detail::receiver_overlap(s1, s2)) return true;
      if (detail::protocol_hit(net, s2.sender, s1, rules.guard_zone)) return true;
      if (detail::protocol_hit(net, s1.sender, s2, rules.guard_zone)) return true;
      return false;
  }
  return false;
}

/// Builds the weighted conflict graph of the network. Vertex order is the
/// canonical enumeration order, so serialized graphs are byte-stable.
inline ConflictGraph build_conflict_graph(const Network& net,
                                          WeightRule weight_rule = WeightRule::kReceiverCount) {
  std::vector<Transmission> verts = enumerate_transmissions(net);
  std::vector<double> weights;
  weights.reserve(verts.size());
  for (const Transmission& t : verts) {
    weights.push_back(weight_rule == WeightRule::kReceiverCount
                          ? static_cast<double>(t.receivers.size())
                          : 1.0);
  }
  ConflictGraph g(std::move(verts), std::move(weights));
  const int n = g.num_vertices();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (conflicts(net.rules(), net, g.vertex(a), g.vertex(b))) g.add_edge(a, b);
    }
  }
  return g;
}

/// Plain weighted graph for tests and generic solvers: vertex i becomes a
/// synthetic transmission with sender i and one dummy receiver, so sender
/// groups are singletons.
inline ConflictGraph synthetic_graph(int n, const std::vector<std::pair<int, int>>& edge_list,
                                     std::vector<double> weights = {}) {
  std::vector<Transmission> verts;
  verts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) verts.push_back(Transmission{i, {n + i}});
  if (weights.empty()) weights.assign(static_cast<std::size_t>(n), 1.0);
  ConflictGraph g(std::move(verts), std::move(weights));
  for (auto [u, v] : edge_list) g.add_edge(u, v);
  return g;
}

/// Subgraph induced by `keep` (original indices, any order; result follows the
/// sorted order). Returns the graph plus the map from new index to original.
inline std::pair<ConflictGraph, std::vector<int>> induced_subgraph(const ConflictGraph& g,
                                                                   std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<Transmission> verts;
  std::vector<double> weights;
  verts.reserve(keep.size());
  for (int v : keep) {
    verts.push_back(g.vertex(v));
    weights.push_back(g.weight(v));
  }
  ConflictGraph sub(std::move(verts), std::move(weights));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      if (g.adjacent(keep[a], keep[b])) sub.add_edge(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return {std::move(sub), std::move(keep)};
}

inline std::vector<std::vector<int>> connected_components(const ConflictGraph& g) {
  const int n = g.num_vertices();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> comp;
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      g.row(v).for_each([&](std::size_t u) {
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(static_cast<int>(u));
        }
      });
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace clawbreak
