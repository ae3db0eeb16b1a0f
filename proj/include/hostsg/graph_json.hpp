#pragma once

#include <string>

#include <json.hpp>

#include "hostsg/host_graph.hpp"
#include "hostsg/ice.hpp"
#include "hostsg/tsg.hpp"

namespace hostsg {

inline nlohmann::json tsg_to_json(const Tsg& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : t.nodes) {
    nlohmann::json prov = nlohmann::json::array();
    for (const auto& o : n.provenance)
      prov.push_back({{"frame", o.frame},
                      {"node", o.source},
                      {"box", {o.box.x1, o.box.y1, o.box.x2, o.box.y2}}});
    nodes.push_back({{"id", n.id},
                     {"kind", to_string(n.kind)},
                     {"tag", n.tag},
                     {"feature", n.feature},
                     {"provenance", std::move(prov)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : t.edges)
    edges.push_back({{"src", e.src},
                     {"dst", e.dst},
                     {"kind", to_string(e.kind)},
                     {"label", e.label}});
  return {{"clip_index", t.clip_index},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

inline nlohmann::json hostsg_to_json(const HostSg& h) {
  nlohmann::json tsgs = nlohmann::json::array();
  for (const auto& t : h.tsgs) tsgs.push_back(tsg_to_json(t));
  nlohmann::json corefs = nlohmann::json::array();
  for (const auto& e : h.coref_edges)
    corefs.push_back({{"clip_a", e.clip_a},
                      {"node_a", e.node_a},
                      {"clip_b", e.clip_b},
                      {"node_b", e.node_b},
                      {"weight", e.weight}});
  return {{"tsgs", std::move(tsgs)}, {"coref_edges", std::move(corefs)}};
}

inline nlohmann::json ice_to_json(const IceGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : g.nodes)
    nodes.push_back({{"kind", to_string(n.kind)},
                     {"clip", n.clip},
                     {"tag", n.tag},
                     {"role", n.role}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"src", e.src},
                     {"dst", e.dst},
                     {"kind", to_string(e.kind)},
                     {"weight", e.weight},
                     {"label", e.label}});
  return {{"n_clips", g.n_clips},
          {"n_roles", g.n_roles},
          {"total_objects", g.total_objects},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

// Graphviz rendering of the hierarchical graph: object nodes grouped per
// clip, event nodes below, edge styles by kind.
inline std::string ice_to_dot(const IceGraph& g) {
  std::string out = "digraph ice {\n  rankdir=LR;\n";
  for (std::size_t c = 0; c < g.n_clips; ++c) {
    out += "  subgraph cluster_clip" + std::to_string(c) + " {\n";
    out += "    label=\"clip " + std::to_string(c) + "\";\n";
    for (std::size_t i = 0; i < g.obj_count(c); ++i) {
      const std::size_t idx = g.object_index(c, i);
      out += "    n" + std::to_string(idx) + " [label=\"" + g.nodes[idx].tag +
             "\", shape=box];\n";
    }
    out += "    n" + std::to_string(g.predicate_index(c)) +
           " [label=\"pred\", shape=ellipse, style=bold];\n";
    for (std::size_t r = 0; r < g.n_roles; ++r)
      out += "    n" + std::to_string(g.arg_index(c, r)) + " [label=\"arg" +
             std::to_string(r) + "\", shape=ellipse];\n";
    out += "  }\n";
  }
  for (const auto& e : g.edges) {
    std::string style;
    switch (e.kind) {
      case EdgeKind::Scene: style = "color=black"; break;
      case EdgeKind::Motion: style = "color=blue"; break;
      case EdgeKind::Coref: style = "color=red, style=dashed"; break;
      case EdgeKind::Mapping: style = "color=gray, style=dotted"; break;
      case EdgeKind::PredArg: style = "color=green"; break;
      case EdgeKind::Evolution: style = "color=purple, style=bold"; break;
    }
    out += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) +
           " [" + style;
    if (!e.label.empty()) out += ", label=\"" + e.label + "\"";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace hostsg
