#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hostsg/data.hpp"
#include "hostsg/errors.hpp"
#include "hostsg/geometry.hpp"
#include "hostsg/tags.hpp"

namespace hostsg {

struct Occurrence {
  int frame = 0;
  NodeId source = 0;
  BBox box;

  bool operator==(const Occurrence&) const = default;
};

struct TsgNode {
  std::size_t id = 0;
  NodeKind kind = NodeKind::StaticObj;
  std::string tag;
  std::vector<double> feature;
  std::vector<Occurrence> provenance;  // >1 entry only for merged statics
};

enum class EdgeKind { Scene, Motion, Coref, Mapping, PredArg, Evolution };

inline const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Scene: return "scene";
    case EdgeKind::Motion: return "motion";
    case EdgeKind::Coref: return "coref";
    case EdgeKind::Mapping: return "mapping";
    case EdgeKind::PredArg: return "predarg";
    case EdgeKind::Evolution: return "evolution";
  }
  return "?";
}

struct TsgEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  EdgeKind kind = EdgeKind::Scene;
  std::string label;  // scene relation label, empty otherwise
};

struct Tsg {
  int clip_index = 0;
  std::vector<TsgNode> nodes;
  std::vector<TsgEdge> edges;
};

// (frame_index, source node id) -> cluster index
using MergeMap = std::map<std::pair<int, NodeId>, std::size_t>;

namespace detail {

struct Chain {
  std::string tag;
  BBox last_box;          // most recent occurrence's box
  std::vector<std::pair<int, NodeId>> members;
};

inline constexpr std::size_t kNoChain = std::size_t(-1);

// Temporal single-pass chain matching shared by static merging and dynamic
// motion linking: an incoming node joins the chain whose most recent box has
// IoU > d and equal tag; among several candidates the nearest centroid wins.
// Chains already claimed by an earlier node of the same frame are skipped so
// two nodes of one frame never share a chain.
inline std::size_t match_chain(const std::vector<Chain>& chains,
                               const std::vector<bool>& claimed,
                               const std::string& tag, const BBox& box,
                               double d) {
  std::size_t best = kNoChain;
  double best_dist = std::numeric_limits<double>::max();
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (claimed[c]) continue;
    if (chains[c].tag != tag) continue;
    if (iou(chains[c].last_box, box) <= d) continue;
    const double dist = centroid_distance(chains[c].last_box, box);
    if (dist < best_dist) {
      best_dist = dist;
      best = c;
    }
  }
  return best;
}

}  // namespace detail

// Merge clusters for static nodes over keyframe-filtered frames, processed
// in temporal order. Returns the source-node -> cluster map.
inline MergeMap merge_static_nodes(const std::vector<FrameSceneGraph>& frames,
                                   double d,
                                   NodeKind unknown_default = NodeKind::DynamicObj) {
  if (d <= 0.0 || d >= 1.0)
    throw ConfigError("merge_static_nodes: d must be in (0,1)");
  std::vector<detail::Chain> chains;
  MergeMap out;
  for (const auto& frame : frames) {
    std::vector<bool> claimed(chains.size(), false);
    for (const auto& n : frame.nodes) {
      if (classify_node(n.tag, unknown_default) != NodeKind::StaticObj)
        continue;
      std::size_t c = detail::match_chain(chains, claimed, n.tag, n.box, d);
      if (c == detail::kNoChain) {
        chains.push_back({n.tag, n.box, {}});
        claimed.push_back(true);
        c = chains.size() - 1;
      } else {
        chains[c].last_box = n.box;
        claimed[c] = true;
      }
      chains[c].members.push_back({frame.frame_index, n.id});
      out[{frame.frame_index, n.id}] = c;
    }
  }
  return out;
}

// Compresses one clip's frame scene graphs into a TSG: static clusters
// collapse to single nodes (feature = member mean, all incident scene edges
// kept), dynamic nodes stay per-occurrence and get motion edges along their
// matched chains.
inline Tsg build_tsg(const ClipRecord& clip, double d,
                     NodeKind unknown_default = NodeKind::DynamicObj) {
  if (clip.frames.empty()) throw DataError("build_tsg: empty clip");
  Tsg tsg;
  tsg.clip_index = clip.clip_index;

  const MergeMap merges = merge_static_nodes(clip.frames, d, unknown_default);

  // static cluster -> tsg node
  std::map<std::size_t, std::size_t> cluster_node;
  // (frame, source id) -> tsg node (the image map for edges)
  std::map<std::pair<int, NodeId>, std::size_t> image;
  // dynamic chain state for motion matching
  std::vector<detail::Chain> dyn_chains;
  std::vector<std::size_t> dyn_chain_last_node;  // tsg node of chain's last occurrence

  for (const auto& frame : clip.frames) {
    std::vector<bool> dyn_claimed(dyn_chains.size(), false);
    for (std::size_t i = 0; i < frame.nodes.size(); ++i) {
      const auto& n = frame.nodes[i];
      const NodeKind kind = classify_node(n.tag, unknown_default);
      const std::pair<int, NodeId> key{frame.frame_index, n.id};

      if (kind == NodeKind::StaticObj) {
        const std::size_t cluster = merges.at(key);
        auto it = cluster_node.find(cluster);
        if (it == cluster_node.end()) {
          TsgNode tn;
          tn.id = tsg.nodes.size();
          tn.kind = NodeKind::StaticObj;
          tn.tag = n.tag;
          tn.feature = n.feature;
          tn.provenance = {{frame.frame_index, n.id, n.box}};
          cluster_node.emplace(cluster, tn.id);
          image[key] = tn.id;
          tsg.nodes.push_back(std::move(tn));
        } else {
          TsgNode& tn = tsg.nodes[it->second];
          tn.provenance.push_back({frame.frame_index, n.id, n.box});
          for (std::size_t j = 0; j < tn.feature.size(); ++j)
            tn.feature[j] += n.feature[j];  // re-meaned below
          image[key] = tn.id;
        }
      } else {
        TsgNode tn;
        tn.id = tsg.nodes.size();
        tn.kind = NodeKind::DynamicObj;
        tn.tag = n.tag;
        tn.feature = n.feature;
        tn.provenance = {{frame.frame_index, n.id, n.box}};
        image[key] = tn.id;

        const std::size_t c =
            detail::match_chain(dyn_chains, dyn_claimed, n.tag, n.box, d);
        if (c == detail::kNoChain) {
          dyn_chains.push_back({n.tag, n.box, {}});
          dyn_claimed.push_back(true);
          dyn_chain_last_node.push_back(tn.id);
        } else {
          tsg.edges.push_back(
              {dyn_chain_last_node[c], tn.id, EdgeKind::Motion, ""});
          dyn_chains[c].last_box = n.box;
          dyn_claimed[c] = true;
          dyn_chain_last_node[c] = tn.id;
        }
        tsg.nodes.push_back(std::move(tn));
      }
    }
  }

  // merged feature = arithmetic mean of members
  for (auto& tn : tsg.nodes) {
    if (tn.kind == NodeKind::StaticObj && tn.provenance.size() > 1) {
      const double k = static_cast<double>(tn.provenance.size());
      for (auto& x : tn.feature) x /= k;
    }
  }

  // every input scene edge keeps an image
  for (const auto& frame : clip.frames)
    for (const auto& e : frame.edges)
      tsg.edges.push_back({image.at({frame.frame_index, e.subject}),
                           image.at({frame.frame_index, e.object}),
                           EdgeKind::Scene, e.relation});

  return tsg;
}

// Connected components of motion edges over dynamic nodes; single dynamic
// nodes form singleton groups. pooled_feature = mean of member features.
struct DynamicGroup {
  int clip_index = 0;
  std::vector<std::size_t> members;
  std::vector<double> pooled_feature;
  std::string tag;
};

}  // namespace hostsg
