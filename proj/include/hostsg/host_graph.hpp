#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "hostsg/errors.hpp"
#include "hostsg/tsg.hpp"
#include "hostsg/union_find.hpp"

namespace hostsg {

// Cross-clip coreference edge between TSG nodes (clip = position in
// HostSg::tsgs). Undirected; stored once with clip_a < clip_b.
struct CorefEdge {
  std::size_t clip_a = 0;
  std::size_t node_a = 0;
  std::size_t clip_b = 0;
  std::size_t node_b = 0;
  double weight = 1.0;
};

struct HostSg {
  std::vector<Tsg> tsgs;
  std::vector<CorefEdge> coref_edges;
};

namespace detail {

inline std::vector<double> l2_normalized(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s <= 0.0) return v;
  auto out = v;
  for (auto& x : out) x /= s;
  return out;
}

inline double feature_dot(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

// Softmax over exp(relu(f_source . f_i)) across the candidate set; features
// are l2-normalized first so the logits live on a bounded scale.
inline std::vector<double> similarity_scores(
    const std::vector<double>& source,
    const std::vector<std::vector<double>>& candidates) {
  std::vector<double> out;
  if (candidates.empty()) return out;
  const auto s = detail::l2_normalized(source);
  double z = 0.0;
  for (const auto& c : candidates) {
    const double d = detail::feature_dot(s, detail::l2_normalized(c));
    const double e = std::exp(std::max(0.0, d));
    out.push_back(e);
    z += e;
  }
  for (auto& x : out) x /= z;
  return out;
}

inline std::vector<double> node_similarity(
    const TsgNode& source, const std::vector<const TsgNode*>& candidates) {
  std::vector<std::vector<double>> feats;
  for (const auto* c : candidates) {
    if (c->tag != source.tag)
      throw DataError("node_similarity: candidate tag mismatch");
    feats.push_back(c->feature);
  }
  return similarity_scores(source.feature, feats);
}

inline std::vector<double> dynamic_group_similarity(
    const DynamicGroup& source, const std::vector<const DynamicGroup*>& candidates) {
  std::vector<std::vector<double>> feats;
  for (const auto* c : candidates) feats.push_back(c->pooled_feature);
  return similarity_scores(source.pooled_feature, feats);
}

// Connected components of motion edges; singleton groups for unlinked
// dynamic nodes.
inline std::vector<DynamicGroup> dynamic_groups(const Tsg& tsg) {
  UnionFind uf(tsg.nodes.size());
  for (const auto& e : tsg.edges)
    if (e.kind == EdgeKind::Motion) uf.unite(e.src, e.dst);

  std::map<std::size_t, DynamicGroup> groups;
  for (const auto& n : tsg.nodes) {
    if (n.kind != NodeKind::DynamicObj) continue;
    auto& g = groups[uf.find(n.id)];
    g.clip_index = tsg.clip_index;
    g.tag = n.tag;
    g.members.push_back(n.id);
    if (g.pooled_feature.empty())
      g.pooled_feature.assign(n.feature.size(), 0.0);
    for (std::size_t i = 0; i < n.feature.size(); ++i)
      g.pooled_feature[i] += n.feature[i];
  }
  std::vector<DynamicGroup> out;
  for (auto& [root, g] : groups) {
    for (auto& x : g.pooled_feature) x /= static_cast<double>(g.members.size());
    out.push_back(std::move(g));
  }
  return out;
}

// One accepted match per source element: argmax over equal-tag candidates,
// gated by score > gamma.
struct CrossClipMatch {
  bool is_group = false;
  // static: single node pair; group: full member lists of both groups
  std::vector<std::size_t> nodes_a;
  std::vector<std::size_t> nodes_b;
};

inline std::vector<CrossClipMatch> match_cross_clip(const Tsg& tsg_a,
                                                    const Tsg& tsg_b,
                                                    double gamma) {
  if (gamma <= 0.0 || gamma >= 1.0)
    throw ConfigError("match_cross_clip: gamma must be in (0,1)");
  std::vector<CrossClipMatch> out;

  // static nodes
  for (const auto& src : tsg_a.nodes) {
    if (src.kind != NodeKind::StaticObj) continue;
    std::vector<const TsgNode*> cands;
    for (const auto& c : tsg_b.nodes)
      if (c.kind == NodeKind::StaticObj && c.tag == src.tag)
        cands.push_back(&c);
    if (cands.empty()) continue;
    const auto scores = node_similarity(src, cands);
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
      if (scores[i] > scores[best]) best = i;
    if (scores[best] > gamma)
      out.push_back({false, {src.id}, {cands[best]->id}});
  }

  // dynamic groups
  const auto groups_a = dynamic_groups(tsg_a);
  const auto groups_b = dynamic_groups(tsg_b);
  for (const auto& src : groups_a) {
    std::vector<const DynamicGroup*> cands;
    for (const auto& c : groups_b)
      if (c.tag == src.tag) cands.push_back(&c);
    if (cands.empty()) continue;
    const auto scores = dynamic_group_similarity(src, cands);
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
      if (scores[i] > scores[best]) best = i;
    if (scores[best] > gamma)
      out.push_back({true, src.members, cands[best]->members});
  }
  return out;
}

// Joins clip TSGs with coreference edges: matched static nodes get one
// undirected edge; matched dynamic groups are fully connected pairwise.
// Matching runs over both directions of every clip pair; duplicate
// acceptances deduplicate to one edge.
inline HostSg build_hostsg(std::vector<Tsg> tsgs, double gamma) {
  if (tsgs.empty()) throw DataError("build_hostsg: need at least one TSG");
  HostSg host;
  host.tsgs = std::move(tsgs);

  std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> seen;
  auto add_edge = [&](std::size_t ca, std::size_t na, std::size_t cb,
                      std::size_t nb) {
    if (ca > cb) {
      std::swap(ca, cb);
      std::swap(na, nb);
    }
    if (seen.insert({ca, na, cb, nb}).second)
      host.coref_edges.push_back({ca, na, cb, nb, 1.0});
  };

  const std::size_t n = host.tsgs.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      for (const auto& m : match_cross_clip(host.tsgs[a], host.tsgs[b],
                                            gamma)) {
        for (std::size_t na : m.nodes_a)
          for (std::size_t nb : m.nodes_b) add_edge(a, na, b, nb);
      }
    }
  }
  // deterministic edge order
  std::sort(host.coref_edges.begin(), host.coref_edges.end(),
            [](const CorefEdge& x, const CorefEdge& y) {
              return std::tie(x.clip_a, x.clip_b, x.node_a, x.node_b) <
                     std::tie(y.clip_a, y.clip_b, y.node_a, y.node_b);
            });
  return host;
}

}  // namespace hostsg
