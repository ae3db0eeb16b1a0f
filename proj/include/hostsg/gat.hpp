#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hostsg/errors.hpp"
#include "hostsg/ice.hpp"
#include "hostsg/params.hpp"
#include "hostsg/tape.hpp"

namespace hostsg::nn {

struct GatConfig {
  std::size_t layers = 3;   // multipath layers
  std::size_t heads = 3;    // total heads; divisible by 3 in multipath mode
  std::size_t hidden = 64;
};

// Per-node in-neighborhood with optional differentiable edge weights.
// An absent weight is exactly neutral; weight refs enter attention as
// log-offsets so weight 1 is neutral and weight 0 excludes (such edges are
// dropped before the adjacency is built).
struct Adjacency {
  struct Neighbor {
    std::size_t index;
    std::optional<Tape::Ref> weight;
  };
  std::vector<std::vector<Neighbor>> in;  // per destination node

  explicit Adjacency(std::size_t n) : in(n) {}

  void link_undirected(std::size_t a, std::size_t b,
                       std::optional<Tape::Ref> w = std::nullopt) {
    in[a].push_back({b, w});
    if (a != b) in[b].push_back({a, w});
  }
};

// One multi-head GAT layer: per head, attention over {self} ∪ in-neighbors,
// logits leakyrelu(a_src.Th_i + a_dst.Th_j) + log(w_ij); head outputs are
// averaged and passed through tanh.
inline Tape::Ref gat_layer(Session& s, const std::string& prefix,
                           Tape::Ref states, const Adjacency& adj,
                           std::size_t heads, std::size_t dout) {
  Tape& t = s.tape();
  const Tensor& X = t.val(states);
  if (X.rank() != 2) throw ShapeError("gat_layer: states must be a matrix");
  const std::size_t n = X.shape[0], din = X.shape[1];
  if (adj.in.size() != n)
    throw ShapeError("gat_layer: adjacency size does not match node count");
  if (heads == 0) throw ConfigError("gat_layer: need at least one head");

  Tape::Ref zero = t.scalar(0.0);
  Tape::Ref combined = 0;
  for (std::size_t h = 0; h < heads; ++h) {
    const std::string hp = prefix + ".h" + std::to_string(h);
    const Tape::Ref W = s.param(hp + ".W", {din, dout});
    const Tape::Ref a_src = s.param(hp + ".a_src", {dout});
    const Tape::Ref a_dst = s.param(hp + ".a_dst", {dout});

    const Tape::Ref T = t.matmul(states, W);     // (n x dout)
    const Tape::Ref sv = t.matvec(T, a_src);     // (n)
    const Tape::Ref tv = t.matvec(T, a_dst);     // (n)

    std::vector<Tape::Ref> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> neigh{i};  // self-loop
      std::vector<Tape::Ref> logw{zero};
      for (const auto& nb : adj.in[i]) {
        if (nb.weight && t.val(*nb.weight).item() <= 0.0) continue;
        neigh.push_back(nb.index);
        logw.push_back(nb.weight ? t.log_(*nb.weight) : zero);
      }
      const Tape::Ref si = t.gather(sv, {i});
      Tape::Ref logits =
          t.leaky_relu(t.adds(t.gather(tv, neigh), si), 0.2);
      logits = t.add(logits, t.concat(logw));
      const Tape::Ref alpha = t.softmax(logits);
      rows.push_back(t.vecmat(alpha, t.gather_rows(T, neigh)));
    }
    const Tape::Ref head_out = t.stack_rows(rows);
    combined = h == 0 ? head_out : t.add(combined, head_out);
  }
  if (heads > 1) combined = t.scale(combined, 1.0 / static_cast<double>(heads));
  return t.tanh_(combined);
}

// Builds one undirected adjacency over a node subset (identity remap when
// remap is empty). Edges whose endpoints are outside the subset are skipped.
inline Adjacency build_adjacency(
    const std::vector<IceEdge>& edges,
    const std::vector<std::optional<Tape::Ref>>& weight_refs, std::size_t n,
    const std::vector<std::ptrdiff_t>& remap = {},
    const std::vector<bool>* kind_filter = nullptr) {
  Adjacency adj(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (kind_filter && !(*kind_filter)[static_cast<std::size_t>(edges[e].kind)])
      continue;
    std::size_t a = edges[e].src, b = edges[e].dst;
    if (!remap.empty()) {
      if (remap[a] < 0 || remap[b] < 0) continue;
      a = static_cast<std::size_t>(remap[a]);
      b = static_cast<std::size_t>(remap[b]);
    }
    std::optional<Tape::Ref> w =
        e < weight_refs.size() ? weight_refs[e] : std::nullopt;
    if (!w && edges[e].weight <= 0.0) continue;
    adj.link_undirected(a, b, w);
  }
  return adj;
}

inline std::vector<bool> kind_mask(std::initializer_list<EdgeKind> kinds) {
  std::vector<bool> m(6, false);
  for (auto k : kinds) m[static_cast<std::size_t>(k)] = true;
  return m;
}

// Multipath layer: coreference-group heads over object nodes and
// object-object edges, event-group heads over event nodes and
// PredArg/Evolution edges, normal-group heads over everything; the two
// restricted outputs are stacked along the node axis (ICE order) and added
// elementwise to the all-node output.
inline Tape::Ref multipath_gat_layer(
    Session& s, const std::string& prefix, Tape::Ref states,
    const IceGraph& ice,
    const std::vector<std::optional<Tape::Ref>>& weight_refs,
    std::size_t heads, std::size_t dout) {
  if (heads % 3 != 0)
    throw ConfigError("multipath_gat: heads must be divisible by 3");
  const std::size_t group_heads = heads / 3;
  Tape& t = s.tape();
  const std::size_t n = ice.node_count();
  const std::size_t n_obj = ice.total_objects;
  const std::size_t n_evt = n - n_obj;

  // object subgraph (identity remap of the leading rows)
  std::vector<std::ptrdiff_t> obj_remap(n, -1);
  for (std::size_t i = 0; i < n_obj; ++i) obj_remap[i] = static_cast<std::ptrdiff_t>(i);
  static const std::vector<bool> obj_kinds =
      kind_mask({EdgeKind::Scene, EdgeKind::Motion, EdgeKind::Coref});
  const Adjacency obj_adj =
      build_adjacency(ice.edges, weight_refs, n_obj, obj_remap, &obj_kinds);

  // event subgraph
  std::vector<std::ptrdiff_t> evt_remap(n, -1);
  for (std::size_t i = n_obj; i < n; ++i)
    evt_remap[i] = static_cast<std::ptrdiff_t>(i - n_obj);
  static const std::vector<bool> evt_kinds =
      kind_mask({EdgeKind::PredArg, EdgeKind::Evolution});
  const Adjacency evt_adj =
      build_adjacency(ice.edges, weight_refs, n_evt, evt_remap, &evt_kinds);

  const Adjacency all_adj = build_adjacency(ice.edges, weight_refs, n);

  std::vector<std::size_t> obj_rows(n_obj), evt_rows(n_evt);
  for (std::size_t i = 0; i < n_obj; ++i) obj_rows[i] = i;
  for (std::size_t i = 0; i < n_evt; ++i) evt_rows[i] = n_obj + i;

  const Tape::Ref h_obj =
      gat_layer(s, prefix + ".obj", t.gather_rows(states, obj_rows), obj_adj,
                group_heads, dout);
  const Tape::Ref h_evt =
      gat_layer(s, prefix + ".evt", t.gather_rows(states, evt_rows), evt_adj,
                group_heads, dout);
  const Tape::Ref h_norm =
      gat_layer(s, prefix + ".norm", states, all_adj, group_heads, dout);

  // node-axis stack of the restricted outputs, elementwise sum with normal
  const Tensor& ho = t.val(h_obj);
  const Tensor& he = t.val(h_evt);
  if (ho.shape[1] != he.shape[1] || ho.shape[0] + he.shape[0] != n)
    throw ShapeError("multipath_gat: stacked output does not match node count");
  std::vector<Tape::Ref> stacked_rows;
  stacked_rows.reserve(n);
  for (std::size_t i = 0; i < n_obj; ++i) stacked_rows.push_back(t.row(h_obj, i));
  for (std::size_t i = 0; i < n_evt; ++i) stacked_rows.push_back(t.row(h_evt, i));
  return t.add(t.stack_rows(stacked_rows), h_norm);
}

}  // namespace hostsg::nn
