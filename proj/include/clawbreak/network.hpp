#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "clawbreak/errors.hpp"
#include "clawbreak/rng.hpp"

namespace clawbreak {

enum class Antenna { kOmni, kDirectional };

enum class RuleSet {
  kLineProtocol,         // protocol model, omnidirectional, TDD
  kTreeHop,              // tree topology, hop-based interference
  kTreeFullDuplex,       // tree/diamond topology, full duplex, 2-hop safe
  kDirectionalProtocol,  // protocol model, 60-degree antennas facing +x
};

inline const char* to_string(RuleSet r) {
  switch (r) {
    case RuleSet::kLineProtocol: return "LINE_PROTOCOL";
    case RuleSet::kTreeHop: return "TREE_HOP";
    case RuleSet::kTreeFullDuplex: return "TREE_FULL_DUPLEX";
    case RuleSet::kDirectionalProtocol: return "DIRECTIONAL_PROTOCOL";
  }
  return "?";
}

struct ScenarioRules {
  RuleSet rule_set = RuleSet::kDirectionalProtocol;
  double guard_zone = 1e-6;  // Delta; any positive value, arbitrarily small
  int neighbor_cap = 5;      // K

  bool valid() const { return guard_zone >= 0.0 && neighbor_cap >= 1; }
};

struct Transceiver {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double range = 1.0;  // r_T
  Antenna antenna = Antenna::kOmni;
};

inline double distance(const Transceiver& a, const Transceiver& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Half-angle of the directional antenna cone (60-degree beam).
inline constexpr double kConeHalfAngle = std::numbers::pi / 6.0;

/// True when `to` lies in the transmit cone of `from` (axis +x, half-angle
/// pi/6). Ties x_from == x_to do not transmit in either direction.
inline bool in_transmit_cone(const Transceiver& from, const Transceiver& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx <= 0.0) return false;
  return std::abs(std::atan2(dy, dx)) < kConeHalfAngle;
}

/// A set of positioned transceivers plus the scenario rule set.
///
/// Tree rule sets carry an explicit child->parent map. Structured generators
/// (line and diamond families) may instead fix each node's receiver set
/// explicitly; geometry then only enters interference tests.
class Network {
 public:
  Network(std::vector<Transceiver> transceivers, ScenarioRules rules,
          std::optional<std::map<int, int>> tree_parent = std::nullopt,
          std::optional<std::map<int, std::vector<int>>> receiver_sets = std::nullopt)
      : transceivers_(std::move(transceivers)),
        rules_(rules),
        tree_parent_(std::move(tree_parent)),
        receiver_sets_(std::move(receiver_sets)) {
    validate();
  }

  const std::vector<Transceiver>& transceivers() const { return transceivers_; }
  const ScenarioRules& rules() const { return rules_; }
  int size() const { return static_cast<int>(transceivers_.size()); }

  bool has(int id) const { return index_.count(id) != 0; }
  const Transceiver& at(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownTransceiver(id);
    return transceivers_[it->second];
  }

  bool has_tree() const { return tree_parent_.has_value(); }
  const std::map<int, int>& tree_parent() const { return *tree_parent_; }

  /// -1 when the node is the root (or no tree is present).
  int parent_of(int id) const {
    if (!tree_parent_) return -1;
    auto it = tree_parent_->find(id);
    return it == tree_parent_->end() ? -1 : it->second;
  }
  bool is_child_of(int child, int parent) const { return parent_of(child) == parent; }

  bool has_receiver_sets() const { return receiver_sets_.has_value(); }
  const std::map<int, std::vector<int>>& receiver_sets() const { return *receiver_sets_; }

 private:
  void validate() {
    for (std::size_t i = 0; i < transceivers_.size(); ++i) {
      const Transceiver& t = transceivers_[i];
      if (t.range <= 0.0) throw SpecViolation("transceiver range must be positive");
      if (!index_.emplace(t.id, i).second) {
        throw SpecViolation("duplicate transceiver id " + std::to_string(t.id));
      }
    }
    if (!rules_.valid()) throw SpecViolation("invalid scenario rules");
    const bool tree_rules =
        rules_.rule_set == RuleSet::kTreeHop || rules_.rule_set == RuleSet::kTreeFullDuplex;
    if (tree_rules && !tree_parent_ && !receiver_sets_) {
      throw SpecViolation("tree rule sets require a tree or explicit receiver sets");
    }
    if (!tree_rules && tree_parent_) {
      throw SpecViolation("tree structure present under a geometric rule set");
    }
    if (tree_parent_) validate_tree();
  }

  // Single root, acyclic, parents exist.
  void validate_tree() {
    int roots = 0;
    for (const Transceiver& t : transceivers_) {
      if (tree_parent_->count(t.id) == 0) ++roots;
    }
    if (roots != 1) throw SpecViolation("tree must have exactly one root");
    for (const auto& [child, parent] : *tree_parent_) {
      if (!has(child) || !has(parent)) throw SpecViolation("tree references unknown id");
      int hops = 0;
      int cur = parent;
      while (cur != -1) {
        if (cur == child) throw SpecViolation("tree contains a cycle");
        cur = parent_of(cur);
        if (++hops > size()) throw SpecViolation("tree contains a cycle");
      }
    }
  }

  std::vector<Transceiver> transceivers_;
  ScenarioRules rules_;
  std::optional<std::map<int, int>> tree_parent_;
  std::optional<std::map<int, std::vector<int>>> receiver_sets_;
  std::map<int, std::size_t> index_;
};

/// Receiver candidates of transceiver i under the network's rule set, sorted
/// by id.
///
/// Geometric rule sets take every node within transmission range; the
/// directional rule set additionally requires the receiver to sit in the
/// sender's transmit cone (which forces x_i < x_j). Tree rule sets return the
/// node's children. Networks carrying explicit receiver sets (line/diamond
/// generators) answer from those.
inline std::vector<int> neighbors(const Network& net, int id) {
  const Transceiver& self = net.at(id);
  std::vector<int> out;
  if (net.has_receiver_sets()) {
    auto it = net.receiver_sets().find(id);
    if (it != net.receiver_sets().end()) out = it->second;
    std::sort(out.begin(), out.end());
    return out;
  }
  switch (net.rules().rule_set) {
    case RuleSet::kTreeHop:
    case RuleSet::kTreeFullDuplex:
      for (const auto& [child, parent] : net.tree_parent()) {
        if (parent == id) out.push_back(child);
      }
      break;
    case RuleSet::kLineProtocol:
      for (const Transceiver& other : net.transceivers()) {
        if (other.id == id) continue;
        if (distance(self, other) <= self.range) out.push_back(other.id);
      }
      break;
    case RuleSet::kDirectionalProtocol:
      for (const Transceiver& other : net.transceivers()) {
        if (other.id == id) continue;
        if (distance(self, other) <= self.range && in_transmit_cone(self, other)) {
          out.push_back(other.id);
        }
      }
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class ConnectivityGraph {
  kRange,  // undirected edge whenever |P_i - P_j| <= r_T
  kLinks,  // undirected view of the rule set's neighbor relation
};

/// Whether the network forms a single component. Directionality is ignored;
/// the default judges the plain range graph.
inline bool is_connected(const Network& net, ConnectivityGraph mode = ConnectivityGraph::kRange) {
  const auto& ts = net.transceivers();
  const int n = static_cast<int>(ts.size());
  if (n == 0) throw SpecViolation("is_connected requires a nonempty network");
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool linked = false;
      if (mode == ConnectivityGraph::kRange) {
        const double d = distance(ts[i], ts[j]);
        linked = d <= ts[i].range || d <= ts[j].range;
      } else {
        if (net.has_receiver_sets() || net.has_tree()) {
          auto ni = neighbors(net, ts[i].id);
          auto nj = neighbors(net, ts[j].id);
          linked = std::count(ni.begin(), ni.end(), ts[j].id) != 0 ||
                   std::count(nj.begin(), nj.end(), ts[i].id) != 0;
        } else if (net.rules().rule_set == RuleSet::kDirectionalProtocol) {
          linked = (distance(ts[i], ts[j]) <= ts[i].range && in_transmit_cone(ts[i], ts[j])) ||
                   (distance(ts[j], ts[i]) <= ts[j].range && in_transmit_cone(ts[j], ts[i]));
        } else {
          const double d = distance(ts[i], ts[j]);
          linked = d <= ts[i].range || d <= ts[j].range;
        }
      }
      if (linked) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++visited;
        stack.push_back(u);
      }
    }
  }
  return visited == n;
}

/// n transceivers with i.i.d. uniform coordinates over [0, side]^2, all with
/// the given range. Deterministic in the seed.
inline Network random_network(int n, double side, double range, const ScenarioRules& rules,
                              std::uint64_t seed) {
  if (n < 1) throw SpecViolation("random_network requires n >= 1");
  if (side <= 0.0) throw SpecViolation("random_network requires side > 0");
  Rng rng(seed);
  std::vector<Transceiver> ts;
  ts.reserve(static_cast<std::size_t>(n));
  const Antenna antenna = rules.rule_set == RuleSet::kDirectionalProtocol ? Antenna::kDirectional
                                                                          : Antenna::kOmni;
  for (int i = 0; i < n; ++i) {
    const double x = rng.unit() * side;
    const double y = rng.unit() * side;
    ts.push_back(Transceiver{i, x, y, range, antenna});
  }
  return Network(std::move(ts), rules);
}

}  // namespace clawbreak
