#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "hostsg/data.hpp"
#include "hostsg/errors.hpp"
#include "hostsg/rng.hpp"

namespace hostsg {

// Planted-rule benchmark generator.
//
// Each sample has one protagonist (a dynamic entity appearing in every clip)
// and, per clip, one linked static entity B plus an unlinked static
// distractor B' drawn from the same salient pool. The clip verb is a fixed
// function of (protagonist tag, linked static tag) and only the scene edge
// reveals which static object is linked, so the verb is recoverable from
// graph structure but ambiguous from pooled features alone. Event relations
// follow a fixed rule over the two clips' verbs. Cross-clip identities share
// a per-entity feature prototype plus Gaussian noise.
struct GeneratorConfig {
  std::size_t clips = 5;
  std::size_t frames_per_clip = 3;
  std::size_t objects_per_frame = 6;  // >= 4: protagonist, dyn distractor, B, B'
  std::size_t feature_dim = 64;
  double noise = 0.05;         // per-occurrence feature noise (stddev)
  double jitter = 0.02;        // static box jitter between frames
  double offset_scale = 0.6;   // per-entity offset from the tag prototype
  std::uint64_t world_seed = 1234;  // fixes tag prototypes across samples
  std::size_t relation_count = 4;
};

namespace synth {

inline const std::vector<std::string>& protagonist_tags() {
  static const std::vector<std::string> v{"man", "woman", "dog", "horse"};
  return v;
}

inline const std::vector<std::string>& salient_static_tags() {
  static const std::vector<std::string> v{"door", "table", "tree"};
  return v;
}

inline const std::vector<std::string>& distractor_dynamic_tags() {
  static const std::vector<std::string> v{"bird", "sheep", "cat",
                                          "bear", "cow", "elephant"};
  return v;
}

inline const std::vector<std::string>& distractor_static_tags() {
  static const std::vector<std::string> v{"lamp", "rock", "sign", "bench",
                                          "flag", "pole", "cup", "plate",
                                          "shelf", "fence"};
  return v;
}

inline std::size_t verb_count() {
  return protagonist_tags().size() * salient_static_tags().size();
}

inline int verb_rule(std::size_t protagonist_idx, std::size_t static_idx) {
  return static_cast<int>(protagonist_idx * salient_static_tags().size() +
                          static_idx);
}

inline std::string verb_name(int verb) {
  const auto s = salient_static_tags().size();
  return protagonist_tags()[verb / s] + "_" + salient_static_tags()[verb % s];
}

inline int relation_rule(int verb_i, int verb_j, std::size_t relation_count) {
  return static_cast<int>((verb_i + 2 * verb_j) %
                          static_cast<int>(relation_count));
}

// Token vocabulary: 0 = PAD, 1 = EOS, then object tags, then one scene token
// per salient static tag.
inline const std::vector<std::string>& token_vocab() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> t{"<pad>", "<eos>"};
    for (const auto& s : protagonist_tags()) t.push_back(s);
    for (const auto& s : salient_static_tags()) t.push_back(s);
    for (const auto& s : distractor_dynamic_tags()) t.push_back(s);
    for (const auto& s : distractor_static_tags()) t.push_back(s);
    for (const auto& s : salient_static_tags()) t.push_back("scene_" + s);
    return t;
  }();
  return v;
}

inline int token_id(const std::string& name) {
  const auto& v = token_vocab();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == name) return static_cast<int>(i);
  throw ConfigError("unknown token " + name);
}

inline double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(std::max(s, 1e-12));
}

inline std::vector<double> tag_prototype(const GeneratorConfig& cfg,
                                         const std::string& tag) {
  Rng rng = Rng::derive(cfg.world_seed, "proto:" + tag);
  auto v = rng.normal_vec(cfg.feature_dim);
  const double n = vec_norm(v);
  for (auto& x : v) x /= n;
  return v;
}

}  // namespace synth

namespace synth_detail {

struct Entity {
  std::string tag;
  std::vector<double> feature;  // prototype + entity offset, pre-noise
};

inline Entity make_entity(const GeneratorConfig& cfg, const std::string& tag,
                          Rng& rng) {
  Entity e;
  e.tag = tag;
  e.feature = synth::tag_prototype(cfg, tag);
  for (auto& x : e.feature) x += cfg.offset_scale * rng.normal();
  return e;
}

inline std::vector<double> observe(const Entity& e, double noise, Rng& rng) {
  auto f = e.feature;
  if (noise > 0.0)
    for (auto& x : f) x += noise * rng.normal();
  return f;
}

inline BBox jittered(const BBox& b, double jitter, Rng& rng) {
  if (jitter <= 0.0) return b;
  const double dx = rng.uniform(-jitter, jitter);
  const double dy = rng.uniform(-jitter, jitter);
  BBox out{std::clamp(b.x1 + dx, 0.0, 0.98), std::clamp(b.y1 + dy, 0.0, 0.98),
           std::clamp(b.x2 + dx, 0.02, 1.0), std::clamp(b.y2 + dy, 0.02, 1.0)};
  if (!out.valid()) return b;
  return out;
}

inline BBox random_box(Rng& rng, double w, double h) {
  const double x = rng.uniform(0.0, 1.0 - w);
  const double y = rng.uniform(0.0, 1.0 - h);
  return BBox{x, y, x + w, y + h};
}

}  // namespace synth_detail

inline SyntheticSample generate_synthetic(const GeneratorConfig& cfg,
                                          std::uint64_t seed) {
  using namespace synth;
  using namespace synth_detail;

  if (cfg.clips == 0 || cfg.frames_per_clip == 0)
    throw ConfigError("generator: clips and frames_per_clip must be >= 1");
  if (cfg.objects_per_frame < 4)
    throw ConfigError("generator: objects_per_frame must be >= 4");
  if (cfg.feature_dim == 0)
    throw ConfigError("generator: feature_dim must be >= 1");
  if (cfg.relation_count == 0)
    throw ConfigError("generator: relation vocabulary must be nonempty");
  if (cfg.clips > distractor_dynamic_tags().size())
    throw ConfigError("generator: too many clips for the distractor pool");

  Rng rng(seed);
  SyntheticSample s;
  s.gold.present = true;

  // protagonist entity, shared across all clips
  const std::size_t prot_idx = rng.index(protagonist_tags().size());
  const Entity protagonist =
      make_entity(cfg, protagonist_tags()[prot_idx], rng);

  // one entity per salient static tag, shared wherever the tag appears
  std::vector<Entity> statics;
  for (const auto& t : salient_static_tags())
    statics.push_back(make_entity(cfg, t, rng));
  std::vector<BBox> static_box(statics.size());

  // per-clip tag assignments: linked static b, distractor static b' != b,
  // per-clip-unique dynamic distractor tags
  std::vector<std::size_t> dyn_distractor_order(
      distractor_dynamic_tags().size());
  for (std::size_t i = 0; i < dyn_distractor_order.size(); ++i)
    dyn_distractor_order[i] = i;
  for (std::size_t i = 0; i + 1 < dyn_distractor_order.size(); ++i)
    std::swap(dyn_distractor_order[i],
              dyn_distractor_order[i + rng.index(dyn_distractor_order.size() - i)]);

  std::size_t static_distractor_cursor = 0;
  std::vector<std::size_t> stat_distractor_order(
      distractor_static_tags().size());
  for (std::size_t i = 0; i < stat_distractor_order.size(); ++i)
    stat_distractor_order[i] = i;
  for (std::size_t i = 0; i + 1 < stat_distractor_order.size(); ++i)
    std::swap(stat_distractor_order[i],
              stat_distractor_order[i + rng.index(stat_distractor_order.size() - i)]);

  // coref bookkeeping: occurrences per shared entity
  std::vector<std::vector<NodeKey>> prot_occurrences(1);
  std::vector<std::vector<NodeKey>> static_occurrences(statics.size());
  // which clips each static entity appears in (for cross-clip clusters)
  std::vector<std::unordered_set<int>> static_clip_hits(statics.size());
  std::unordered_set<int> prot_clip_hits;

  for (std::size_t ci = 0; ci < cfg.clips; ++ci) {
    ClipRecord clip;
    clip.clip_index = static_cast<int>(ci);

    const std::size_t b = rng.index(salient_static_tags().size());
    std::size_t bp = rng.index(salient_static_tags().size() - 1);
    if (bp >= b) ++bp;  // distractor static != linked static

    const Entity dyn_distractor = make_entity(
        cfg, distractor_dynamic_tags()[dyn_distractor_order[ci]], rng);

    std::vector<Entity> extra_statics;
    for (std::size_t i = 4; i < cfg.objects_per_frame; ++i) {
      const auto& pool = distractor_static_tags();
      const std::string tag =
          pool[stat_distractor_order[static_distractor_cursor++ %
                                     stat_distractor_order.size()]];
      extra_statics.push_back(make_entity(cfg, tag, rng));
    }

    // layout: protagonist walks, statics sit still with jitter
    BBox prot_box = random_box(rng, 0.2, 0.3);
    BBox dynd_box = random_box(rng, 0.15, 0.2);
    static_box[b] = random_box(rng, 0.18, 0.22);
    static_box[bp] = random_box(rng, 0.18, 0.22);
    std::vector<BBox> extra_box;
    for (std::size_t i = 0; i < extra_statics.size(); ++i)
      extra_box.push_back(random_box(rng, 0.1, 0.12));

    const int verb = verb_rule(prot_idx, b);
    s.gold.verbs.push_back(verb);

    // per-clip merge clusters for every static entity
    std::vector<std::vector<NodeKey>> clip_merges(2 + extra_statics.size());

    for (std::size_t fi = 0; fi < cfg.frames_per_clip; ++fi) {
      FrameSceneGraph frame;
      frame.frame_index = static_cast<int>(fi);
      NodeId next_id = 0;

      auto add_node = [&](const Entity& e, const BBox& box) {
        SgNode n;
        n.id = next_id++;
        n.tag = e.tag;
        n.box = box;
        n.score = 0.6 + 0.4 * rng.uniform();
        n.feature = observe(e, cfg.noise, rng);
        frame.nodes.push_back(std::move(n));
        return frame.nodes.back().id;
      };

      const NodeId prot_id = add_node(protagonist, prot_box);
      const NodeId dynd_id = add_node(dyn_distractor, dynd_box);
      const NodeId b_id =
          add_node(statics[b], jittered(static_box[b], cfg.jitter, rng));
      const NodeId bp_id =
          add_node(statics[bp], jittered(static_box[bp], cfg.jitter, rng));
      std::vector<NodeId> extra_ids;
      for (std::size_t i = 0; i < extra_statics.size(); ++i)
        extra_ids.push_back(add_node(
            extra_statics[i], jittered(extra_box[i], cfg.jitter, rng)));

      // the single signal-carrying edge: protagonist interacts with B
      frame.edges.push_back({prot_id, "interacting_with", b_id});
      (void)dynd_id;
      (void)bp_id;

      const int f = static_cast<int>(fi);
      const int c = static_cast<int>(ci);
      prot_occurrences[0].push_back({c, f, prot_id});
      static_occurrences[b].push_back({c, f, b_id});
      static_occurrences[bp].push_back({c, f, bp_id});
      clip_merges[0].push_back({c, f, b_id});
      clip_merges[1].push_back({c, f, bp_id});
      for (std::size_t i = 0; i < extra_ids.size(); ++i)
        clip_merges[2 + i].push_back({c, f, extra_ids[i]});

      clip.frames.push_back(std::move(frame));

      // protagonist drifts; consecutive-frame IoU stays above 0.5
      prot_box.x1 = std::min(prot_box.x1 + 0.04, 0.75);
      prot_box.x2 = std::min(prot_box.x2 + 0.04, 0.95);
      dynd_box.y1 = std::min(dynd_box.y1 + 0.03, 0.75);
      dynd_box.y2 = std::min(dynd_box.y2 + 0.03, 0.95);
    }

    prot_clip_hits.insert(static_cast<int>(ci));
    static_clip_hits[b].insert(static_cast<int>(ci));
    static_clip_hits[bp].insert(static_cast<int>(ci));

    for (auto& m : clip_merges)
      if (m.size() > 1) s.gold.merges.push_back(std::move(m));

    // gold argument texts
    std::map<std::string, std::vector<int>> args;
    args["Arg0"] = {token_id(protagonist.tag)};
    args["Arg1"] = {token_id(salient_static_tags()[b])};
    args["Arg2"] = {token_id(protagonist.tag),
                    token_id(salient_static_tags()[b])};
    args["ArgLoc"] = {token_id(salient_static_tags()[bp])};
    args["ArgScn"] = {token_id("scene_" + salient_static_tags()[b])};
    s.gold.args.push_back(std::move(args));

    s.clips.push_back(std::move(clip));
  }

  // relations over all ordered clip pairs
  for (std::size_t i = 0; i < cfg.clips; ++i)
    for (std::size_t j = i + 1; j < cfg.clips; ++j)
      s.gold.relations[{static_cast<int>(i), static_cast<int>(j)}] =
          synth::relation_rule(s.gold.verbs[i], s.gold.verbs[j],
                               cfg.relation_count);

  // cross-clip identity clusters (entities seen in >= 2 clips)
  if (prot_clip_hits.size() > 1) s.gold.corefs.push_back(prot_occurrences[0]);
  for (std::size_t t = 0; t < statics.size(); ++t)
    if (static_clip_hits[t].size() > 1)
      s.gold.corefs.push_back(static_occurrences[t]);

  return s;
}

inline std::vector<SyntheticSample> generate_dataset(
    const GeneratorConfig& cfg, std::size_t n_samples, std::uint64_t seed) {
  std::vector<SyntheticSample> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i)
    out.push_back(generate_synthetic(cfg, seed + i * 1000003ull));
  return out;
}

}  // namespace hostsg
