#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "clawbreak/errors.hpp"
#include "clawbreak/network.hpp"
#include "clawbreak/rng.hpp"

namespace clawbreak {

/// Source-to-sink line: n nodes on the x axis, node i transmitting to the
/// next `reach[i]` nodes (1 or 2). The range must never cover a node three
/// hops away.
struct LineSpec {
  int n = 0;
  std::vector<double> spacings;  // n-1 gaps
  double range = 1.0;            // r_T
  std::vector<int> reach;        // n-1 entries; reach[n-2] is forced to 1
};

inline void validate(const LineSpec& spec) {
  if (spec.n < 1) throw SpecViolation("line spec needs n >= 1");
  if (spec.range <= 0.0) throw SpecViolation("line spec needs positive range");
  if (static_cast<int>(spec.spacings.size()) != spec.n - 1) {
    throw SpecViolation("line spec needs n-1 spacings");
  }
  if (static_cast<int>(spec.reach.size()) != spec.n - 1) {
    throw SpecViolation("line spec needs n-1 reach entries");
  }
  for (double s : spec.spacings) {
    if (s <= 0.0) throw SpecViolation("line spacings must be positive");
  }
  for (int i = 0; i + 1 <= spec.n - 1; ++i) {
    const int r = spec.reach[static_cast<std::size_t>(i)];
    if (r != 1 && r != 2) throw SpecViolation("line reach entries must be 1 or 2");
    if (i == spec.n - 2 && r != 1) throw SpecViolation("last transmitting node must have reach 1");
    if (spec.spacings[static_cast<std::size_t>(i)] > spec.range) {
      throw SpecViolation("node " + std::to_string(i) + " cannot reach its successor");
    }
    if (r == 2) {
      if (i + 2 > spec.n - 1) throw SpecViolation("reach 2 requires a node two hops ahead");
      if (spec.spacings[static_cast<std::size_t>(i)] + spec.spacings[static_cast<std::size_t>(i + 1)] >
          spec.range) {
        throw SpecViolation("node " + std::to_string(i) + " cannot reach two hops ahead");
      }
    }
  }
  for (int i = 0; i + 3 <= spec.n - 1; ++i) {
    const double three = spec.spacings[static_cast<std::size_t>(i)] +
                         spec.spacings[static_cast<std::size_t>(i + 1)] +
                         spec.spacings[static_cast<std::size_t>(i + 2)];
    if (three <= spec.range) {
      throw SpecViolation("range permits a 3-hop transmission at node " + std::to_string(i));
    }
  }
}

inline Network line_network(const LineSpec& spec) {
  validate(spec);
  std::vector<Transceiver> ts;
  ts.reserve(static_cast<std::size_t>(spec.n));
  double x = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    if (i > 0) x += spec.spacings[static_cast<std::size_t>(i - 1)];
    ts.push_back(Transceiver{i, x, 0.0, spec.range, Antenna::kOmni});
  }
  std::map<int, std::vector<int>> succ;
  for (int i = 0; i + 1 <= spec.n - 1; ++i) {
    std::vector<int> r{i + 1};
    if (spec.reach[static_cast<std::size_t>(i)] == 2) r.push_back(i + 2);
    succ[i] = std::move(r);
  }
  ScenarioRules rules;
  rules.rule_set = RuleSet::kLineProtocol;
  return Network(std::move(ts), rules, std::nullopt, std::move(succ));
}

/// The five-node arrangement of the worked line example: gaps 2r/3, r/3, r, r
/// with the first node reaching two hops.
inline LineSpec example_line_spec(double r = 1.0) {
  return LineSpec{5, {2.0 * r / 3.0, r / 3.0, r, r}, r, {2, 1, 1, 1}};
}

/// True when a two-hop reach at node i keeps the conflict graph claw-free in
/// the equally-spaced family. Interior skips are dangerous: with gaps g in
/// (r/3, r/2], a node c in 2 <= c <= n-6 transmitting to c+2 centers the claw
/// {(c,{c+2}); (c-2,{c-1}), (c+1,{c+2}), (c+4,{c+5})} -- the protocol guard
/// turns the equal-distance ties toward that center into conflicts while the
/// leaves stay mutually clear. Verified exhaustively over every reach vector
/// for n <= 12.
inline bool line_skip_position_safe(int i, int n) { return i <= 1 || i >= n - 5; }

/// Random line spec from a family where claw-freeness holds: equal gaps in
/// (r/3, r/2] and two-hop reaches only at safe positions. Reach choices at
/// those positions stay free.
inline LineSpec random_line_spec(Rng& rng, int n_min = 2, int n_max = 12) {
  LineSpec spec;
  spec.n = n_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max - n_min + 1)));
  spec.range = 1.0;
  const double gap = 0.35 + 0.15 * rng.unit();  // in [0.35, 0.5]
  spec.spacings.assign(static_cast<std::size_t>(spec.n - 1), gap);
  for (int i = 0; i < spec.n - 1; ++i) {
    const bool may_skip = i < spec.n - 2 && line_skip_position_safe(i, spec.n);
    spec.reach.push_back(may_skip ? 1 + static_cast<int>(rng.below(2)) : 1);
  }
  return spec;
}

enum class TreeVariant {
  kScenarioII,  // TDD, hop interference, one fertile node per level
  kFullDuplex,  // full duplex, every node may have children
};

struct TreeSpec {
  TreeVariant variant = TreeVariant::kScenarioII;
  std::vector<int> children_per_level;  // children of the fertile node(s), per level
};

/// Tree whose levels follow the spec. Under SCENARIO_II exactly one node per
/// level has children (the lowest-id node of that level); under the
/// full-duplex variant every node of level l has children_per_level[l]
/// children. Ids are assigned breadth-first.
inline Network tree_network(const TreeSpec& spec, int neighbor_cap = 5) {
  for (int c : spec.children_per_level) {
    if (c < 1) throw SpecViolation("children counts must be >= 1");
    if (c > neighbor_cap) throw SpecViolation("children count exceeds the neighbor cap");
  }
  std::vector<Transceiver> ts;
  std::map<int, int> parent;
  std::vector<int> level{0};
  ts.push_back(Transceiver{0, 0.0, 0.0, 1.0, Antenna::kOmni});
  int next_id = 1;
  for (std::size_t l = 0; l < spec.children_per_level.size(); ++l) {
    const int c = spec.children_per_level[l];
    std::vector<int> next_level;
    const std::vector<int> fertile =
        spec.variant == TreeVariant::kScenarioII ? std::vector<int>{level.front()} : level;
    for (int p : fertile) {
      for (int k = 0; k < c; ++k) {
        const int id = next_id++;
        parent[id] = p;
        ts.push_back(Transceiver{id, static_cast<double>(l + 1),
                                 static_cast<double>(next_level.size()), 1.0, Antenna::kOmni});
        next_level.push_back(id);
      }
    }
    level = std::move(next_level);
  }
  ScenarioRules rules;
  rules.rule_set =
      spec.variant == TreeVariant::kScenarioII ? RuleSet::kTreeHop : RuleSet::kTreeFullDuplex;
  rules.neighbor_cap = neighbor_cap;
  return Network(std::move(ts), rules, std::move(parent));
}

/// The worked tree example: A->{B,C}, B->{D,E}, D->{F,G}.
inline TreeSpec example_tree_spec() { return TreeSpec{TreeVariant::kScenarioII, {2, 2, 2}}; }

inline TreeSpec random_tree_spec(Rng& rng, TreeVariant variant = TreeVariant::kScenarioII) {
  TreeSpec spec;
  spec.variant = variant;
  const int levels = 2 + static_cast<int>(rng.below(4));
  for (int l = 0; l < levels; ++l) {
    spec.children_per_level.push_back(1 + static_cast<int>(rng.below(3)));
  }
  return spec;
}

/// Layered diamond network: checkpoint l holds widths[l] nodes; node i of a
/// checkpoint transmits to nodes {i, i+1} (growing/equal width) or {i-1, i}
/// (shrinking width) of the next one. Out- and in-degree never exceed two.
struct DiamondSpec {
  std::vector<int> widths;  // one entry per checkpoint
};

inline void validate(const DiamondSpec& spec) {
  if (spec.widths.empty()) throw SpecViolation("diamond spec needs at least one checkpoint");
  for (std::size_t l = 0; l < spec.widths.size(); ++l) {
    if (spec.widths[l] < 1) throw SpecViolation("checkpoint widths must be >= 1");
    if (l + 1 < spec.widths.size() && std::abs(spec.widths[l + 1] - spec.widths[l]) > 1) {
      throw SpecViolation("checkpoint widths may change by at most one");
    }
  }
}

inline Network diamond_network(const DiamondSpec& spec) {
  validate(spec);
  std::vector<Transceiver> ts;
  std::vector<std::vector<int>> layers;
  int next_id = 0;
  for (std::size_t l = 0; l < spec.widths.size(); ++l) {
    std::vector<int> layer;
    const int w = spec.widths[l];
    for (int i = 0; i < w; ++i) {
      ts.push_back(Transceiver{next_id, static_cast<double>(l),
                               static_cast<double>(i) - 0.5 * (w - 1), 1.0, Antenna::kOmni});
      layer.push_back(next_id++);
    }
    layers.push_back(std::move(layer));
  }
  std::map<int, std::vector<int>> succ;
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    const int w_next = spec.widths[l + 1];
    const bool shrinking = w_next < spec.widths[l];
    for (std::size_t i = 0; i < layers[l].size(); ++i) {
      std::vector<int> out;
      const int base = static_cast<int>(i) - (shrinking ? 1 : 0);
      for (int k = 0; k < 2; ++k) {
        const int j = base + k;
        if (j >= 0 && j < w_next) out.push_back(layers[l + 1][static_cast<std::size_t>(j)]);
      }
      if (!out.empty()) succ[layers[l][i]] = std::move(out);
    }
  }
  ScenarioRules rules;
  rules.rule_set = RuleSet::kTreeFullDuplex;
  return Network(std::move(ts), rules, std::nullopt, std::move(succ));
}

/// The worked diamond example: checkpoints of widths 1, 2, 3, 2, 1.
inline DiamondSpec example_diamond_spec() { return DiamondSpec{{1, 2, 3, 2, 1}}; }

inline DiamondSpec random_diamond_spec(Rng& rng) {
  DiamondSpec spec;
  const int checkpoints = 2 + static_cast<int>(rng.below(5));
  int w = 1 + static_cast<int>(rng.below(3));
  for (int l = 0; l < checkpoints; ++l) {
    spec.widths.push_back(w);
    const int step = static_cast<int>(rng.below(3)) - 1;
    w = std::min(3, std::max(1, w + step));
  }
  return spec;
}

}  // namespace clawbreak
