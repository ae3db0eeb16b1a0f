#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hostsg/data.hpp"
#include "hostsg/errors.hpp"
#include "hostsg/gat.hpp"
#include "hostsg/ggnn.hpp"
#include "hostsg/heads.hpp"
#include "hostsg/host_graph.hpp"
#include "hostsg/ice.hpp"
#include "hostsg/keyframe.hpp"
#include "hostsg/params.hpp"
#include "hostsg/refine.hpp"
#include "hostsg/rng.hpp"
#include "hostsg/tsg.hpp"

namespace hostsg::nn {

// Label spaces and the tag list used for tag embeddings. Tags are collected
// from the dataset and sorted so parameter shapes are reproducible.
struct Vocab {
  std::vector<std::string> tags;
  std::map<std::string, std::size_t> tag_index;
  std::size_t tokens = 0;
  std::size_t verbs = 0;
  std::size_t relations = 0;

  static Vocab from_samples(const std::vector<SyntheticSample>& samples,
                            std::size_t tokens, std::size_t verbs,
                            std::size_t relations) {
    Vocab v;
    std::set<std::string> tags;
    for (const auto& s : samples)
      for (const auto& c : s.clips)
        for (const auto& f : c.frames)
          for (const auto& n : f.nodes) tags.insert(n.tag);
    v.tags.assign(tags.begin(), tags.end());
    for (std::size_t i = 0; i < v.tags.size(); ++i) v.tag_index[v.tags[i]] = i;
    v.tokens = tokens;
    v.verbs = verbs;
    v.relations = relations;
    return v;
  }

  std::size_t tag_id(const std::string& tag) const {
    auto it = tag_index.find(tag);
    if (it == tag_index.end()) throw DataError("unknown tag " + tag);
    return it->second;
  }
};

struct ModelConfig {
  std::size_t hidden = 64;
  std::size_t heads = 3;          // divisible by 3
  std::size_t multipath_layers = 3;
  double iou_d = 0.5;             // static-merger IoU threshold
  double gamma = 0.3;             // cross-clip similarity threshold
  std::size_t top_k = 15;         // objects kept per frame
  std::size_t keyframes = 5;      // frames kept per clip
  double dropout = 0.1;
  std::size_t n_roles = 10;
  double p_cut = 0.1;
  double gib_beta = 1.0;
  double eta1 = 1.0;              // relation loss weight
  double eta2 = 1.0;              // argument text loss weight
  double eta3 = 1.0;              // bottleneck loss weight
  std::size_t max_text_len = 80;
  std::size_t beam = 5;
  NodeKind unknown_tag_kind = NodeKind::DynamicObj;

  // ablation switches
  bool use_sg_features = true;  // per-node features; off = pooled clip feature
  bool use_mapping = true;      // argument-object mapping edges
  bool use_refine = true;
  bool use_multipath = true;
  bool use_base_gat = true;
  bool use_ggnn = true;
  bool use_gib = true;
};

// Raw clips -> keyframes -> per-frame top-k -> per-clip temporal graph ->
// cross-clip graph -> full hierarchical graph, with ablation edge drops.
inline IceGraph preprocess(const SyntheticSample& sample,
                           const ModelConfig& cfg, std::uint64_t seed) {
  if (sample.clips.empty()) throw DataError("preprocess: sample has no clips");
  std::vector<Tsg> tsgs;
  tsgs.reserve(sample.clips.size());
  for (const auto& clip : sample.clips) {
    ClipRecord kept;
    kept.clip_index = clip.clip_index;
    for (const auto& f :
         select_keyframes(clip.frames, cfg.keyframes,
                          seed + static_cast<std::uint64_t>(clip.clip_index)))
      kept.frames.push_back(top_k_nodes(f, cfg.top_k));
    tsgs.push_back(build_tsg(kept, cfg.iou_d, cfg.unknown_tag_kind));
  }
  IceGraph ice = build_ice(build_hostsg(std::move(tsgs), cfg.gamma),
                           cfg.n_roles);
  if (!cfg.use_mapping) {
    std::vector<IceEdge> kept;
    for (const auto& e : ice.edges)
      if (e.kind != EdgeKind::Mapping) kept.push_back(e);
    ice.edges = std::move(kept);
  }
  return ice;
}

struct ModelOutput {
  Tape::Ref states = 0;                 // final node states (n x hidden)
  std::vector<Tape::Ref> preds;         // per-clip predicate states
  std::vector<std::optional<Tape::Ref>> weights;  // final edge weights
  std::vector<RefineEvent> refine_trace;
};

namespace detail {

inline Tensor dropout_mask(std::vector<std::size_t> shape, double p,
                           Rng& rng) {
  Tensor m = Tensor::zeros(shape);
  const double keep = 1.0 - p;
  for (auto& x : m.v) x = rng.uniform() < p ? 0.0 : 1.0 / keep;
  return m;
}

}  // namespace detail

inline ModelOutput model_forward(Session& s, const ModelConfig& cfg,
                                 const Vocab& vocab, const IceGraph& ice,
                                 bool training, Rng& rng) {
  if (cfg.heads % 3 != 0)
    throw ConfigError("model_forward: heads must be divisible by 3");
  Tape& t = s.tape();
  const std::size_t d = cfg.hidden;

  // object input states: visual feature + tag embedding, projected; the
  // pooled-feature ablation replaces both with the clip-mean visual feature
  const Tape::Ref tag_table =
      s.param("embed.tag", {std::max<std::size_t>(vocab.tags.size(), 1), d});
  std::vector<Tape::Ref> obj_rows;
  std::size_t fdim = 0;
  for (const auto& tsg : ice.host.tsgs) {
    std::vector<double> pooled;
    if (!cfg.use_sg_features && !tsg.nodes.empty()) {
      pooled.assign(tsg.nodes[0].feature.size(), 0.0);
      for (const auto& n : tsg.nodes)
        for (std::size_t j = 0; j < pooled.size(); ++j)
          pooled[j] += n.feature[j] / static_cast<double>(tsg.nodes.size());
    }
    for (const auto& n : tsg.nodes) {
      if (fdim == 0) fdim = n.feature.size();
      if (n.feature.size() != fdim)
        throw DataError("model_forward: inconsistent feature dimensions");
      Tape::Ref in;
      if (cfg.use_sg_features) {
        const Tape::Ref f = t.leaf(Tensor::vec(n.feature));
        const Tape::Ref e = t.embed(tag_table, vocab.tag_id(n.tag));
        in = t.concat({f, e});
      } else {
        const Tape::Ref f = t.leaf(Tensor::vec(pooled));
        in = t.concat({f, t.leaf(Tensor::zeros({d}))});
      }
      obj_rows.push_back(t.tanh_(
          t.add(t.matvec(s.param("embed.in.W", {d, fdim + d}), in),
                s.param("embed.in.b", {d}))));
    }
  }
  if (obj_rows.empty()) throw DataError("model_forward: no object nodes");
  Tape::Ref obj_states = t.stack_rows(obj_rows);

  // intra-clip base layer over object structure
  if (cfg.use_base_gat) {
    static const std::vector<bool> obj_kinds =
        kind_mask({EdgeKind::Scene, EdgeKind::Motion, EdgeKind::Coref});
    std::vector<std::ptrdiff_t> remap(ice.node_count(), -1);
    for (std::size_t i = 0; i < ice.total_objects; ++i)
      remap[i] = static_cast<std::ptrdiff_t>(i);
    const Adjacency adj = build_adjacency(
        ice.edges, {}, ice.total_objects, remap, &obj_kinds);
    obj_states = gat_layer(s, "base", obj_states, adj, cfg.heads, d);
  }

  // event node initialization: predicate = clip mean, arguments = role rows
  const Tape::Ref role_table = s.param("embed.role", {cfg.n_roles, d});
  std::vector<Tape::Ref> all_rows;
  for (std::size_t i = 0; i < ice.total_objects; ++i)
    all_rows.push_back(t.row(obj_states, i));
  for (std::size_t c = 0; c < ice.n_clips; ++c) {
    std::vector<std::size_t> idx(ice.obj_count(c));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = ice.obj_begin(c) + i;
    all_rows.push_back(t.mean_rows(t.gather_rows(obj_states, idx)));
    for (std::size_t r = 0; r < cfg.n_roles; ++r)
      all_rows.push_back(t.embed(role_table, r));
  }
  Tape::Ref H = t.stack_rows(all_rows);

  ModelOutput out;
  out.weights = init_edge_weights(t, ice);

  const std::size_t L = cfg.multipath_layers;
  for (std::size_t l = 0; l < L; ++l) {
    const std::string p = "mp" + std::to_string(l);
    if (cfg.use_multipath) {
      H = multipath_gat_layer(s, p, H, ice, out.weights, cfg.heads, d);
    } else {
      const Adjacency adj =
          build_adjacency(ice.edges, out.weights, ice.node_count());
      H = gat_layer(s, p, H, adj, cfg.heads, d);
    }
    if (training && cfg.dropout > 0.0)
      H = t.apply_mask(H, detail::dropout_mask(t.val(H).shape, cfg.dropout, rng));
    if (cfg.use_refine && l + 2 >= L)
      out.weights = refine_edges(s, "refine", H, ice, out.weights, cfg.p_cut,
                                 &out.refine_trace);
  }
  out.states = H;

  std::vector<Tape::Ref> preds;
  for (std::size_t c = 0; c < ice.n_clips; ++c)
    preds.push_back(t.row(H, ice.predicate_index(c)));
  out.preds = cfg.use_ggnn ? ggnn_evolve(s, "ggnn", preds) : preds;
  return out;
}

struct LossBreakdown {
  double verb = 0.0;
  double rel = 0.0;
  double text = 0.0;
  double gib = 0.0;
  double total = 0.0;
};

inline std::vector<Tape::Ref> decoder_memory(Session& s, const IceGraph& ice,
                                             const ModelOutput& out,
                                             std::size_t clip,
                                             std::size_t n_roles) {
  Tape& t = s.tape();
  std::vector<Tape::Ref> mem{out.preds[clip]};
  for (std::size_t r = 0; r < n_roles; ++r)
    mem.push_back(t.row(out.states, ice.arg_index(clip, r)));
  return mem;
}

inline Tape::Ref model_loss(Session& s, const ModelConfig& cfg,
                            const Vocab& vocab, const IceGraph& ice,
                            const GoldAnnotations& gold,
                            const ModelOutput& out, Rng& rng,
                            LossBreakdown* breakdown = nullptr) {
  if (!gold.present) throw DataError("model_loss: sample has no annotations");
  if (gold.verbs.size() != ice.n_clips)
    throw DataError("model_loss: gold verb count does not match clips");
  Tape& t = s.tape();

  std::vector<Tape::Ref> verb_terms;
  for (std::size_t c = 0; c < ice.n_clips; ++c) {
    const int y = gold.verbs[c];
    if (y < 0 || static_cast<std::size_t>(y) >= vocab.verbs)
      throw DataError("model_loss: verb label out of range");
    verb_terms.push_back(t.cross_entropy(
        verb_logits(s, "head.verb", out.preds[c], vocab.verbs),
        static_cast<std::size_t>(y)));
  }
  const Tape::Ref l_verb = t.mean(t.concat(verb_terms));

  Tape::Ref l_rel = t.scalar(0.0);
  if (!gold.relations.empty()) {
    std::vector<Tape::Ref> rel_terms;
    for (const auto& [pair, y] : gold.relations) {
      if (y < 0 || static_cast<std::size_t>(y) >= vocab.relations)
        throw DataError("model_loss: relation label out of range");
      rel_terms.push_back(t.cross_entropy(
          relation_logits(s, "head.rel", out.preds[pair.first],
                          out.preds[pair.second], vocab.relations),
          static_cast<std::size_t>(y)));
    }
    l_rel = t.mean(t.concat(rel_terms));
  }

  // token CE summed over all roles/positions, averaged once at the end;
  // skipped entirely when the term carries no weight
  std::vector<Tape::Ref> text_sums;
  std::size_t text_count = 0;
  const auto& roles = default_roles();
  for (std::size_t c = 0; cfg.eta2 != 0.0 && c < ice.n_clips; ++c) {
    const auto mem = decoder_memory(s, ice, out, c, cfg.n_roles);
    const auto& clip_args = gold.args.at(c);
    for (std::size_t r = 0; r < cfg.n_roles && r < roles.size(); ++r) {
      auto it = clip_args.find(roles[r]);
      const std::vector<int> tokens =
          it == clip_args.end() ? std::vector<int>{} : it->second;
      std::size_t n = 0;
      text_sums.push_back(role_text_loss(
          s, "head.text", t.row(out.states, ice.arg_index(c, r)), mem, tokens,
          vocab.tokens, &n));
      text_count += n;
    }
  }
  Tape::Ref l_text = t.scalar(0.0);
  if (text_count > 0)
    l_text = t.scale(t.sum(t.concat(text_sums)),
                     1.0 / static_cast<double>(text_count));

  Tape::Ref l_gib = t.scalar(0.0);
  if (cfg.use_gib)
    l_gib = gib_loss(s, "gib", out.states, ice, gold.verbs, gold.relations,
                     vocab.verbs, vocab.relations, cfg.gib_beta, rng);

  const Tape::Ref total =
      t.add(t.add(l_verb, t.scale(l_rel, cfg.eta1)),
            t.add(t.scale(l_text, cfg.eta2), t.scale(l_gib, cfg.eta3)));
  if (breakdown) {
    breakdown->verb = t.val(l_verb).item();
    breakdown->rel = t.val(l_rel).item();
    breakdown->text = t.val(l_text).item();
    breakdown->gib = t.val(l_gib).item();
    breakdown->total = t.val(total).item();
  }
  return total;
}

struct Prediction {
  std::vector<std::vector<std::size_t>> verb_ranking;  // per clip, best first
  std::map<std::pair<int, int>, int> relations;        // all ordered pairs
  std::vector<std::vector<std::vector<int>>> role_texts;  // clip x role
};

inline Prediction predict(Session& s, const ModelConfig& cfg,
                          const Vocab& vocab, const IceGraph& ice,
                          const ModelOutput& out) {
  Tape& t = s.tape();
  Prediction p;
  for (std::size_t c = 0; c < ice.n_clips; ++c)
    p.verb_ranking.push_back(top_k_classes(
        t.val(verb_logits(s, "head.verb", out.preds[c], vocab.verbs)),
        vocab.verbs));
  for (std::size_t i = 0; i < ice.n_clips; ++i)
    for (std::size_t j = i + 1; j < ice.n_clips; ++j) {
      const Tensor& lg = t.val(relation_logits(
          s, "head.rel", out.preds[i], out.preds[j], vocab.relations));
      p.relations[{static_cast<int>(i), static_cast<int>(j)}] =
          static_cast<int>(top_k_classes(lg, 1)[0]);
    }
  DecoderConfig dc;
  dc.max_len = cfg.max_text_len;
  dc.beam = cfg.beam;
  for (std::size_t c = 0; c < ice.n_clips; ++c) {
    const auto mem = decoder_memory(s, ice, out, c, cfg.n_roles);
    std::vector<std::vector<int>> texts;
    for (std::size_t r = 0; r < cfg.n_roles; ++r)
      texts.push_back(decode_role(s, "head.text",
                                  t.row(out.states, ice.arg_index(c, r)), mem,
                                  vocab.tokens, dc));
    p.role_texts.push_back(std::move(texts));
  }
  return p;
}

}  // namespace hostsg::nn
