#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "clawbreak/claw_analysis.hpp"
#include "clawbreak/claw_free.hpp"
#include "clawbreak/conflict_graph.hpp"
#include "clawbreak/errors.hpp"
#include "clawbreak/network.hpp"
#include "clawbreak/scheduling.hpp"

namespace clawbreak {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

inline RuleSet rule_set_from_string(const std::string& s) {
  if (s == "LINE_PROTOCOL") return RuleSet::kLineProtocol;
  if (s == "TREE_HOP") return RuleSet::kTreeHop;
  if (s == "TREE_FULL_DUPLEX") return RuleSet::kTreeFullDuplex;
  if (s == "DIRECTIONAL_PROTOCOL") return RuleSet::kDirectionalProtocol;
  throw SpecViolation("unknown rule set: " + s);
}

inline Json to_json(const ScenarioRules& rules) {
  return Json{{"rule_set", to_string(rules.rule_set)},
              {"guard_zone", rules.guard_zone},
              {"neighbor_cap", rules.neighbor_cap}};
}

inline ScenarioRules rules_from_json(const Json& j) {
  ScenarioRules rules;
  rules.rule_set = rule_set_from_string(j.at("rule_set").get<std::string>());
  rules.guard_zone = j.at("guard_zone").get<double>();
  rules.neighbor_cap = j.at("neighbor_cap").get<int>();
  return rules;
}

inline Json to_json(const Network& net) {
  Json j;
  j["rules"] = to_json(net.rules());
  Json ts = Json::array();
  for (const Transceiver& t : net.transceivers()) {
    ts.push_back(Json{{"id", t.id}, {"x", t.x}, {"y", t.y}, {"r", t.range}});
  }
  j["transceivers"] = std::move(ts);
  if (net.has_tree()) {
    Json tree = Json::object();
    for (const auto& [child, parent] : net.tree_parent()) {
      tree[std::to_string(child)] = parent;
    }
    j["tree"] = std::move(tree);
  }
  if (net.has_receiver_sets()) {
    Json succ = Json::object();
    for (const auto& [id, receivers] : net.receiver_sets()) {
      succ[std::to_string(id)] = receivers;
    }
    j["succ"] = std::move(succ);
  }
  return j;
}

inline Network network_from_json(const Json& j) {
  const ScenarioRules rules = rules_from_json(j.at("rules"));
  const Antenna antenna = rules.rule_set == RuleSet::kDirectionalProtocol ? Antenna::kDirectional
                                                                          : Antenna::kOmni;
  std::vector<Transceiver> ts;
  for (const Json& tj : j.at("transceivers")) {
    ts.push_back(Transceiver{tj.at("id").get<int>(), tj.at("x").get<double>(),
                             tj.at("y").get<double>(), tj.at("r").get<double>(), antenna});
  }
  std::optional<std::map<int, int>> tree;
  if (j.contains("tree")) {
    tree.emplace();
    for (const auto& [child, parent] : j.at("tree").items()) {
      (*tree)[std::stoi(child)] = parent.get<int>();
    }
  }
  std::optional<std::map<int, std::vector<int>>> succ;
  if (j.contains("succ")) {
    succ.emplace();
    for (const auto& [id, receivers] : j.at("succ").items()) {
      (*succ)[std::stoi(id)] = receivers.get<std::vector<int>>();
    }
  }
  return Network(std::move(ts), rules, std::move(tree), std::move(succ));
}

inline Json to_json(const ConflictGraph& g) {
  Json verts = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    const Transmission& t = g.vertex(v);
    verts.push_back(Json{{"sender", t.sender}, {"receivers", t.receivers}, {"w", g.weight(v)}});
  }
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
  return Json{{"vertices", std::move(verts)}, {"edges", std::move(edges)}};
}

inline ConflictGraph graph_from_json(const Json& j) {
  std::vector<Transmission> verts;
  std::vector<double> weights;
  for (const Json& vj : j.at("vertices")) {
    verts.push_back(
        Transmission{vj.at("sender").get<int>(), vj.at("receivers").get<std::vector<int>>()});
    weights.push_back(vj.at("w").get<double>());
  }
  ConflictGraph g(std::move(verts), std::move(weights));
  for (const Json& ej : j.at("edges")) g.add_edge(ej.at(0).get<int>(), ej.at(1).get<int>());
  return g;
}

/// Plain edge-list form: "p <n> <m>" header then one "e u v" line per edge,
/// 0-based.
inline std::string to_edge_list(const ConflictGraph& g) {
  std::string out =
      "p " + std::to_string(g.num_vertices()) + " " + std::to_string(g.num_edges()) + "\n";
  for (auto [u, v] : g.edges()) {
    out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  return out;
}

inline Json to_json(const ConflictGraph& g, const IndependentSet& s) {
  Json members = Json::array();
  for (int v : s.members) {
    const Transmission& t = g.vertex(v);
    members.push_back(Json{{"sender", t.sender}, {"receivers", t.receivers}});
  }
  return Json{{"members", std::move(members)}, {"weight", s.weight}};
}

inline Json to_json(const ClawFreeResult& r, bool with_trace) {
  Json added = Json::array();
  for (auto [u, v] : r.added_edges) added.push_back(Json::array({u, v}));
  Json j{{"added_edges", std::move(added)},
         {"iterations", r.iterations},
         {"escape_count", r.escape_count}};
  if (with_trace) {
    Json trace = Json::array();
    for (const ClawFreeTraceRow& row : r.trace) {
      trace.push_back(Json{{"edge", Json::array({row.u, row.v})},
                           {"delta", row.delta},
                           {"loss", row.loss},
                           {"escape", row.escape},
                           {"claws_after", row.claws_after}});
    }
    j["trace"] = std::move(trace);
  }
  return j;
}

inline Json to_json(const ClawReport& report) {
  Json claws = Json::array();
  for (const Claw& c : report.claws) {
    claws.push_back(Json{{"center", c.center},
                         {"leaves", Json::array({c.leaves[0], c.leaves[1], c.leaves[2]})}});
  }
  Json attribution = Json::object();
  for (const auto& [id, w] : report.attribution) attribution[std::to_string(id)] = w;
  return Json{
      {"count", report.count}, {"claws", std::move(claws)}, {"attribution", std::move(attribution)}};
}

/// Heat-map rows: id,x,y,weight.
inline std::string attribution_to_csv(const Network& net, const std::map<int, double>& attribution) {
  std::string out = "id,x,y,weight\n";
  for (const Transceiver& t : net.transceivers()) {
    auto it = attribution.find(t.id);
    const double w = it == attribution.end() ? 0.0 : it->second;
    out += std::to_string(t.id) + "," + format_double(t.x) + "," + format_double(t.y) + "," +
           format_double(w) + "\n";
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << content;
  if (!f) throw IoError("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    // malformed content is an input problem, not an I/O one
    throw SpecViolation(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

}  // namespace clawbreak
