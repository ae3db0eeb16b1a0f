#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "hostsg/errors.hpp"
#include "hostsg/geometry.hpp"

namespace hostsg {

using NodeId = std::int64_t;

// One parsed object of a frame scene graph.
struct SgNode {
  NodeId id = 0;
  std::string tag;
  BBox box;
  double score = 1.0;  // parser confidence in [0,1]
  std::vector<double> feature;
};

struct SgEdge {
  NodeId subject = 0;
  std::string relation;
  NodeId object = 0;

  bool operator==(const SgEdge&) const = default;
};

struct FrameSceneGraph {
  int frame_index = 0;
  std::vector<SgNode> nodes;
  std::vector<SgEdge> edges;

  const SgNode* find(NodeId id) const {
    for (const auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
};

struct ClipRecord {
  int clip_index = 0;
  std::vector<FrameSceneGraph> frames;  // ordered by frame_index
};

// A node address inside a sample: (clip, frame, node id).
struct NodeKey {
  int clip = 0;
  int frame = 0;
  NodeId node = 0;

  bool operator==(const NodeKey&) const = default;
  auto operator<=>(const NodeKey&) const = default;
};

struct GoldAnnotations {
  // planted same-entity clusters of static nodes within clips
  std::vector<std::vector<NodeKey>> merges;
  // planted cross-clip identity clusters
  std::vector<std::vector<NodeKey>> corefs;
  std::vector<int> verbs;                              // per clip
  std::vector<std::map<std::string, std::vector<int>>> args;  // per clip, role -> tokens
  std::map<std::pair<int, int>, int> relations;        // per ordered clip pair
  bool present = false;
};

struct SyntheticSample {
  std::vector<ClipRecord> clips;
  GoldAnnotations gold;
};

inline void validate_frame(const FrameSceneGraph& f, std::size_t feature_dim,
                           const std::string& where) {
  std::unordered_set<NodeId> ids;
  for (const auto& n : f.nodes) {
    if (n.tag.empty()) throw DataError(where + ": node with empty tag");
    if (!n.box.valid()) throw DataError(where + ": invalid box on node " +
                                        std::to_string(n.id));
    if (feature_dim != 0 && n.feature.size() != feature_dim)
      throw DataError(where + ": node " + std::to_string(n.id) +
                      " feature dimension " + std::to_string(n.feature.size()) +
                      " != " + std::to_string(feature_dim));
    if (!ids.insert(n.id).second)
      throw DataError(where + ": duplicate node id " + std::to_string(n.id));
  }
  for (const auto& e : f.edges) {
    if (!ids.count(e.subject))
      throw DataError(where + ": edge references missing node id " +
                      std::to_string(e.subject));
    if (!ids.count(e.object))
      throw DataError(where + ": edge references missing node id " +
                      std::to_string(e.object));
  }
}

}  // namespace hostsg
