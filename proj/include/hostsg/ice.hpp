#pragma once

#include <string>
#include <vector>

#include "hostsg/errors.hpp"
#include "hostsg/host_graph.hpp"
#include "hostsg/tsg.hpp"

namespace hostsg {

// Ordered role list: 5 real arguments then 5 modifiers.
inline const std::vector<std::string>& default_roles() {
  static const std::vector<std::string> r{"Arg0",   "Arg1",   "Arg2",
                                          "ArgLoc", "ArgScn", "ArgMnr",
                                          "ArgDir", "ArgPrp", "ArgGol",
                                          "ArgTmp"};
  return r;
}

inline constexpr std::size_t kRealRoles = 5;

struct IceNode {
  NodeKind kind = NodeKind::StaticObj;
  std::size_t clip = 0;
  std::string tag;        // object tag; empty for event nodes
  std::size_t role = 0;   // role index for Argument nodes
};

struct IceEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  EdgeKind kind = EdgeKind::Scene;
  double weight = 1.0;
  std::string label;

  bool adjustable() const { return kind != EdgeKind::PredArg; }
};

// Hierarchical scene-event graph over a flat global node index: all object
// nodes (clip-major, TSG order) followed by 11 event nodes per clip
// (predicate first, then the role-ordered arguments).
struct IceGraph {
  HostSg host;
  std::vector<IceNode> nodes;
  std::vector<IceEdge> edges;
  std::size_t n_clips = 0;
  std::size_t n_roles = 10;
  std::size_t total_objects = 0;
  std::vector<std::size_t> obj_offset;  // per clip

  std::size_t obj_begin(std::size_t clip) const { return obj_offset[clip]; }
  std::size_t obj_count(std::size_t clip) const {
    return host.tsgs[clip].nodes.size();
  }
  std::size_t object_index(std::size_t clip, std::size_t tsg_node) const {
    return obj_offset[clip] + tsg_node;
  }
  std::size_t event_begin(std::size_t clip) const {
    return total_objects + clip * (n_roles + 1);
  }
  std::size_t predicate_index(std::size_t clip) const {
    return event_begin(clip);
  }
  std::size_t arg_index(std::size_t clip, std::size_t role) const {
    return event_begin(clip) + 1 + role;
  }
  std::size_t node_count() const { return nodes.size(); }
  bool is_object(std::size_t idx) const { return idx < total_objects; }
};

// Expands a HostSG with per-clip event structure: fixed predicate-argument
// edges, tentative argument->object mapping edges (weight 1), and a strict
// upper-triangle DAG of predicate evolution edges.
inline IceGraph build_ice(HostSg host, std::size_t n_roles = 10) {
  if (host.tsgs.empty()) throw DataError("build_ice: empty host graph");
  if (n_roles == 0) throw ConfigError("build_ice: need at least one role");

  IceGraph ice;
  ice.n_clips = host.tsgs.size();
  ice.n_roles = n_roles;
  ice.host = std::move(host);
  const auto& tsgs = ice.host.tsgs;

  for (const auto& tsg : tsgs) {
    ice.obj_offset.push_back(ice.total_objects);
    ice.total_objects += tsg.nodes.size();
  }

  for (std::size_t c = 0; c < tsgs.size(); ++c)
    for (const auto& n : tsgs[c].nodes)
      ice.nodes.push_back({n.kind, c, n.tag, 0});
  for (std::size_t c = 0; c < tsgs.size(); ++c) {
    ice.nodes.push_back({NodeKind::Predicate, c, "", 0});
    for (std::size_t r = 0; r < n_roles; ++r)
      ice.nodes.push_back({NodeKind::Argument, c, "", r});
  }

  // scene/motion edges from each TSG
  for (std::size_t c = 0; c < tsgs.size(); ++c)
    for (const auto& e : tsgs[c].edges)
      ice.edges.push_back({ice.object_index(c, e.src),
                           ice.object_index(c, e.dst), e.kind, 1.0, e.label});

  // cross-clip coreference edges
  for (const auto& e : ice.host.coref_edges)
    ice.edges.push_back({ice.object_index(e.clip_a, e.node_a),
                         ice.object_index(e.clip_b, e.node_b), EdgeKind::Coref,
                         e.weight, ""});

  // per-clip event structure
  for (std::size_t c = 0; c < ice.n_clips; ++c) {
    const std::size_t p = ice.predicate_index(c);
    for (std::size_t r = 0; r < n_roles; ++r) {
      const std::size_t a = ice.arg_index(c, r);
      ice.edges.push_back({p, a, EdgeKind::PredArg, 1.0, ""});
      for (std::size_t o = 0; o < ice.obj_count(c); ++o)
        ice.edges.push_back(
            {a, ice.object_index(c, o), EdgeKind::Mapping, 1.0, ""});
    }
  }

  // predicate evolution DAG: earlier -> all later
  for (std::size_t i = 0; i < ice.n_clips; ++i)
    for (std::size_t j = i + 1; j < ice.n_clips; ++j)
      ice.edges.push_back({ice.predicate_index(i), ice.predicate_index(j),
                           EdgeKind::Evolution, 1.0, ""});

  return ice;
}

// Plain-data event-node initialization: predicate feature = mean of the
// TSG's node features, argument features = role embedding rows.
struct EventNode {
  std::size_t clip = 0;
  NodeKind kind = NodeKind::Predicate;
  std::size_t role = 0;
  std::vector<double> feature;
};

inline std::vector<EventNode> init_event_nodes(
    const Tsg& tsg, const std::vector<std::vector<double>>& role_embeddings) {
  if (tsg.nodes.empty()) throw DataError("init_event_nodes: empty TSG");
  if (role_embeddings.size() != 10)
    throw ConfigError("init_event_nodes: role embedding table needs 10 rows");
  std::vector<EventNode> out;
  EventNode pred;
  pred.clip = static_cast<std::size_t>(tsg.clip_index);
  pred.kind = NodeKind::Predicate;
  pred.feature.assign(tsg.nodes[0].feature.size(), 0.0);
  for (const auto& n : tsg.nodes)
    for (std::size_t i = 0; i < pred.feature.size(); ++i)
      pred.feature[i] += n.feature[i];
  for (auto& x : pred.feature) x /= static_cast<double>(tsg.nodes.size());
  out.push_back(std::move(pred));
  for (std::size_t r = 0; r < role_embeddings.size(); ++r) {
    EventNode arg;
    arg.clip = static_cast<std::size_t>(tsg.clip_index);
    arg.kind = NodeKind::Argument;
    arg.role = r;
    arg.feature = role_embeddings[r];
    out.push_back(std::move(arg));
  }
  return out;
}

}  // namespace hostsg
