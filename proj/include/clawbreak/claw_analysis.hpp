#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "clawbreak/conflict_graph.hpp"
#include "clawbreak/network.hpp"

namespace clawbreak {

/// An induced K_{1,3}: the center is adjacent to all three leaves, which are
/// pairwise nonadjacent. Identity is the 4-set; the center is unique within
/// it, so each claw is listed exactly once.
struct Claw {
  int center = 0;
  std::array<int, 3> leaves{};  // ascending
};

/// Three vertices forming an induced K_{1,2} (center adjacent to two
/// nonadjacent leaves) plus a fourth vertex nonadjacent to all three. Adding
/// the edge (center, outsider) would turn it into a claw.
struct PreClaw {
  int center = 0;
  int leaf1 = 0;  // leaf1 < leaf2
  int leaf2 = 0;
  int outsider = 0;
};

/// Number of distinct claws: sum over centers of the number of pairwise
/// nonadjacent neighbor triples. A center with M pairwise independent
/// neighbors contributes C(M,3).
inline long long count_claws(const ConflictGraph& g) {
  long long total = 0;
  const int n = g.num_vertices();
  for (int v = 0; v < n; ++v) {
    const std::vector<int> nb = g.neighbors_of(v);
    const std::size_t m = nb.size();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (g.adjacent(nb[a], nb[b])) continue;
        for (std::size_t c = b + 1; c < m; ++c) {
          if (!g.adjacent(nb[a], nb[c]) && !g.adjacent(nb[b], nb[c])) ++total;
        }
      }
    }
  }
  return total;
}

inline std::vector<Claw> list_claws(const ConflictGraph& g) {
  std::vector<Claw> out;
  const int n = g.num_vertices();
  for (int v = 0; v < n; ++v) {
    const std::vector<int> nb = g.neighbors_of(v);
    const std::size_t m = nb.size();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (g.adjacent(nb[a], nb[b])) continue;
        for (std::size_t c = b + 1; c < m; ++c) {
          if (!g.adjacent(nb[a], nb[c]) && !g.adjacent(nb[b], nb[c])) {
            out.push_back(Claw{v, {nb[a], nb[b], nb[c]}});
          }
        }
      }
    }
  }
  return out;
}

/// All pre-claws, centers ascending, leaves in canonical order.
inline std::vector<PreClaw> list_preclaws(const ConflictGraph& g) {
  std::vector<PreClaw> out;
  const int n = g.num_vertices();
  for (int v = 0; v < n; ++v) {
    const std::vector<int> nb = g.neighbors_of(v);
    const std::size_t m = nb.size();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const int u1 = nb[a];
        const int u2 = nb[b];
        if (g.adjacent(u1, u2)) continue;
        for (int z = 0; z < n; ++z) {
          if (z == v || z == u1 || z == u2) continue;
          if (!g.adjacent(z, v) && !g.adjacent(z, u1) && !g.adjacent(z, u2)) {
            out.push_back(PreClaw{v, u1, u2, z});
          }
        }
      }
    }
  }
  return out;
}

/// Per-transceiver claw involvement for heat maps: every claw adds one unit to
/// each of its four senders and one unit to every receiver in their sets.
inline std::map<int, double> claw_attribution(const ConflictGraph& g, const Network& net) {
  std::map<int, double> weight;
  for (const Transceiver& t : net.transceivers()) weight[t.id] = 0.0;
  for (const Claw& claw : list_claws(g)) {
    std::array<int, 4> members{claw.center, claw.leaves[0], claw.leaves[1], claw.leaves[2]};
    for (int v : members) {
      const Transmission& t = g.vertex(v);
      weight[t.sender] += 1.0;
      for (int r : t.receivers) weight[r] += 1.0;
    }
  }
  return weight;
}

struct ClawReport {
  long long count = 0;
  std::vector<Claw> claws;
  std::map<int, double> attribution;
};

inline ClawReport analyze_claws(const ConflictGraph& g, const Network& net) {
  ClawReport report;
  report.claws = list_claws(g);
  report.count = static_cast<long long>(report.claws.size());
  report.attribution = claw_attribution(g, net);
  return report;
}

}  // namespace clawbreak
