#pragma once

// Property registry shared by the unit test suite and the acceptance runner.
// Each property is a named predicate; a failure returns false (or throws,
// which the runners also treat as failure).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hostsg/config.hpp"
#include "hostsg/data.hpp"
#include "hostsg/geometry.hpp"
#include "hostsg/gradcheck.hpp"
#include "hostsg/graph_json.hpp"
#include "hostsg/heads.hpp"
#include "hostsg/host_graph.hpp"
#include "hostsg/ice.hpp"
#include "hostsg/json_io.hpp"
#include "hostsg/keyframe.hpp"
#include "hostsg/metrics.hpp"
#include "hostsg/model.hpp"
#include "hostsg/refine.hpp"
#include "hostsg/rng.hpp"
#include "hostsg/synthetic.hpp"
#include "hostsg/tags.hpp"
#include "hostsg/train.hpp"
#include "hostsg/tsg.hpp"
#include "hostsg/union_find.hpp"

namespace proptest {

using namespace hostsg;
using nn::Tensor;

struct Property {
  std::string name;
  std::function<bool()> fn;
};

#define P_REQUIRE(cond)        \
  do {                         \
    if (!(cond)) return false; \
  } while (0)

inline bool near(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol;
}

// ---- shared fixtures ----

inline GeneratorConfig tiny_gen() {
  GeneratorConfig g;
  g.clips = 3;
  g.frames_per_clip = 3;
  g.objects_per_frame = 5;
  g.feature_dim = 8;
  return g;
}

inline nn::ModelConfig tiny_model() {
  nn::ModelConfig m;
  m.hidden = 8;
  m.top_k = 8;
  m.keyframes = 3;
  m.dropout = 0.0;
  return m;
}

inline nn::Vocab tiny_vocab(const std::vector<SyntheticSample>& samples) {
  return nn::Vocab::from_samples(samples, synth::token_vocab().size(),
                                 synth::verb_count(), 4);
}

inline FrameSceneGraph random_frame(Rng& rng, std::size_t n,
                                    std::size_t fdim = 4) {
  static const std::vector<std::string> tags{"man",  "dog",   "tree",
                                             "door", "table", "car"};
  FrameSceneGraph f;
  for (std::size_t i = 0; i < n; ++i) {
    SgNode node;
    node.id = static_cast<NodeId>(i);
    node.tag = tags[rng.index(tags.size())];
    const double x = rng.uniform(0.0, 0.7), y = rng.uniform(0.0, 0.7);
    node.box = {x, y, x + rng.uniform(0.05, 0.3), y + rng.uniform(0.05, 0.3)};
    node.score = rng.uniform();
    node.feature = rng.normal_vec(fdim);
    f.nodes.push_back(std::move(node));
  }
  for (std::size_t i = 0; i + 1 < n; i += 2)
    f.edges.push_back({static_cast<NodeId>(i), "near",
                       static_cast<NodeId>(i + 1)});
  return f;
}

// ---- ingest ----

inline bool prop_ingest_roundtrip() {
  const auto samples = generate_dataset(tiny_gen(), 3, 99);
  const std::string text = serialize_dataset(samples);
  const auto parsed = parse_dataset(text);
  P_REQUIRE(serialize_dataset(parsed) == text);
  P_REQUIRE(parsed.size() == samples.size());
  return true;
}

inline bool prop_ingest_duplicate_id_rejected() {
  FrameSceneGraph f;
  SgNode a;
  a.id = 1;
  a.tag = "man";
  a.box = {0, 0, 0.5, 0.5};
  a.feature = {1.0};
  f.nodes.push_back(a);
  f.nodes.push_back(a);
  try {
    validate_frame(f, 1, "test");
  } catch (const DataError&) {
    return true;
  }
  return false;
}

inline bool prop_ingest_invalid_box_rejected() {
  FrameSceneGraph f;
  SgNode a;
  a.id = 0;
  a.tag = "man";
  a.box = {0.5, 0.0, 0.1, 0.5};  // x1 > x2
  a.feature = {1.0};
  f.nodes.push_back(a);
  try {
    validate_frame(f, 1, "test");
  } catch (const DataError&) {
    return true;
  }
  return false;
}

inline bool prop_ingest_dangling_edge_rejected() {
  FrameSceneGraph f;
  SgNode a;
  a.id = 0;
  a.tag = "man";
  a.box = {0, 0, 0.5, 0.5};
  a.feature = {1.0};
  f.nodes.push_back(a);
  f.edges.push_back({0, "near", 7});
  try {
    validate_frame(f, 1, "test");
  } catch (const DataError&) {
    return true;
  }
  return false;
}

inline bool prop_topk_keeps_highest_scores_in_order() {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(10);
    const std::size_t k = 1 + rng.index(n + 2);
    const FrameSceneGraph f = random_frame(rng, n);
    const FrameSceneGraph out = top_k_nodes(f, k);
    P_REQUIRE(out.nodes.size() == std::min(k, n));
    // kept set = k best scores (ties by id) and original relative order
    double kept_min = 2.0;
    for (const auto& m : out.nodes) kept_min = std::min(kept_min, m.score);
    std::size_t better = 0;
    for (const auto& m : f.nodes)
      if (m.score > kept_min) ++better;
    P_REQUIRE(better <= out.nodes.size());
    std::size_t pos = 0;
    for (const auto& m : f.nodes)
      if (pos < out.nodes.size() && out.nodes[pos].id == m.id) ++pos;
    P_REQUIRE(pos == out.nodes.size());
  }
  return true;
}

inline bool prop_topk_no_dangling_edges() {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const FrameSceneGraph f = random_frame(rng, 3 + rng.index(8));
    const FrameSceneGraph out = top_k_nodes(f, 1 + rng.index(4));
    std::set<NodeId> ids;
    for (const auto& n : out.nodes) ids.insert(n.id);
    for (const auto& e : out.edges)
      P_REQUIRE(ids.count(e.subject) && ids.count(e.object));
  }
  return true;
}

inline bool prop_keyframes_count_and_order() {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t nf = 1 + rng.index(8);
    std::vector<FrameSceneGraph> frames;
    for (std::size_t i = 0; i < nf; ++i) {
      FrameSceneGraph f = random_frame(rng, 3);
      f.frame_index = static_cast<int>(i);
      frames.push_back(std::move(f));
    }
    const std::size_t k = 1 + rng.index(10);
    const auto out = select_keyframes(frames, k, 11);
    P_REQUIRE(out.size() == std::min(k, nf));
    for (std::size_t i = 1; i < out.size(); ++i)
      P_REQUIRE(out[i - 1].frame_index < out[i].frame_index);
  }
  return true;
}

inline bool prop_keyframes_deterministic() {
  Rng rng(8);
  std::vector<FrameSceneGraph> frames;
  for (int i = 0; i < 9; ++i) {
    FrameSceneGraph f = random_frame(rng, 4);
    f.frame_index = i;
    frames.push_back(std::move(f));
  }
  const auto a = select_keyframes(frames, 3, 21);
  const auto b = select_keyframes(frames, 3, 21);
  P_REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    P_REQUIRE(a[i].frame_index == b[i].frame_index);
  return true;
}

inline bool prop_iou_basics() {
  const BBox a{0.0, 0.0, 0.1, 0.1};
  const BBox b{0.05, 0.0, 0.15, 0.1};
  P_REQUIRE(near(iou(a, b), 1.0 / 3.0, 1e-12));
  P_REQUIRE(near(iou(b, a), iou(a, b), 1e-15));
  P_REQUIRE(near(iou(a, a), 1.0, 1e-15));
  P_REQUIRE(iou(a, BBox{0.5, 0.5, 0.6, 0.6}) == 0.0);
  try {
    iou(a, BBox{0.5, 0.5, 0.4, 0.6});
    return false;
  } catch (const DataError&) {
  }
  return true;
}

// ---- tsg ----

inline bool prop_classify_examples() {
  P_REQUIRE(classify_node("street") == NodeKind::StaticObj);
  P_REQUIRE(classify_node("man") == NodeKind::DynamicObj);
  P_REQUIRE(classify_node("drone") == NodeKind::DynamicObj);
  P_REQUIRE(classify_node("drone", NodeKind::StaticObj) ==
            NodeKind::StaticObj);
  return true;
}

inline bool prop_tsg_covers_all_occurrences() {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    ClipRecord clip;
    std::size_t total = 0;
    for (int fi = 0; fi < 3; ++fi) {
      FrameSceneGraph f = random_frame(rng, 2 + rng.index(5));
      f.frame_index = fi;
      total += f.nodes.size();
      clip.frames.push_back(std::move(f));
    }
    const Tsg tsg = build_tsg(clip, 0.5);
    std::size_t prov = 0;
    for (const auto& n : tsg.nodes) prov += n.provenance.size();
    P_REQUIRE(prov == total);
    P_REQUIRE(tsg.nodes.size() <= total);
  }
  return true;
}

inline bool prop_tsg_merge_clusters_valid() {
  Rng rng(32);
  const double d = 0.5;
  for (int trial = 0; trial < 10; ++trial) {
    ClipRecord clip;
    for (int fi = 0; fi < 4; ++fi) {
      FrameSceneGraph f = random_frame(rng, 4);
      f.frame_index = fi;
      clip.frames.push_back(std::move(f));
    }
    const Tsg tsg = build_tsg(clip, d);
    for (const auto& n : tsg.nodes) {
      if (n.kind != NodeKind::StaticObj) {
        P_REQUIRE(n.provenance.size() == 1);
        continue;
      }
      std::set<int> frames_seen;
      for (const auto& occ : n.provenance)
        P_REQUIRE(frames_seen.insert(occ.frame).second);
      for (std::size_t i = 1; i < n.provenance.size(); ++i)
        P_REQUIRE(iou(n.provenance[i - 1].box, n.provenance[i].box) > d);
    }
  }
  return true;
}

inline bool prop_tsg_scene_edges_preserved() {
  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    ClipRecord clip;
    std::size_t input_edges = 0;
    for (int fi = 0; fi < 3; ++fi) {
      FrameSceneGraph f = random_frame(rng, 4);
      f.frame_index = fi;
      input_edges += f.edges.size();
      clip.frames.push_back(std::move(f));
    }
    const Tsg tsg = build_tsg(clip, 0.5);
    std::size_t scene = 0;
    for (const auto& e : tsg.edges)
      if (e.kind == EdgeKind::Scene) ++scene;
    P_REQUIRE(scene == input_edges);
  }
  return true;
}

inline bool prop_tsg_motion_constraints() {
  Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    ClipRecord clip;
    for (int fi = 0; fi < 4; ++fi) {
      FrameSceneGraph f = random_frame(rng, 4);
      f.frame_index = fi;
      clip.frames.push_back(std::move(f));
    }
    const Tsg tsg = build_tsg(clip, 0.5);
    for (const auto& e : tsg.edges) {
      if (e.kind != EdgeKind::Motion) continue;
      const TsgNode& a = tsg.nodes[e.src];
      const TsgNode& b = tsg.nodes[e.dst];
      P_REQUIRE(a.kind == NodeKind::DynamicObj);
      P_REQUIRE(b.kind == NodeKind::DynamicObj);
      P_REQUIRE(a.tag == b.tag);
      P_REQUIRE(a.provenance[0].frame < b.provenance[0].frame);
    }
  }
  return true;
}

inline bool prop_tsg_relabel_isomorphic() {
  Rng rng(35);
  ClipRecord clip;
  for (int fi = 0; fi < 3; ++fi) {
    FrameSceneGraph f = random_frame(rng, 5);
    f.frame_index = fi;
    clip.frames.push_back(std::move(f));
  }
  ClipRecord relabeled = clip;
  for (auto& f : relabeled.frames) {
    std::reverse(f.nodes.begin(), f.nodes.end());
    std::map<NodeId, NodeId> remap;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
      remap[f.nodes[i].id] = static_cast<NodeId>(100 + i);
      f.nodes[i].id = static_cast<NodeId>(100 + i);
    }
    for (auto& e : f.edges) {
      e.subject = remap.at(e.subject);
      e.object = remap.at(e.object);
    }
  }
  const Tsg a = build_tsg(clip, 0.5);
  const Tsg b = build_tsg(relabeled, 0.5);
  P_REQUIRE(a.nodes.size() == b.nodes.size());
  P_REQUIRE(a.edges.size() == b.edges.size());
  auto signature = [](const Tsg& t) {
    std::multiset<std::pair<std::string, std::size_t>> s;
    for (const auto& n : t.nodes) s.insert({n.tag, n.provenance.size()});
    return s;
  };
  P_REQUIRE(signature(a) == signature(b));
  return true;
}

inline bool prop_dynamic_groups_partition() {
  Rng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    ClipRecord clip;
    for (int fi = 0; fi < 3; ++fi) {
      FrameSceneGraph f = random_frame(rng, 4);
      f.frame_index = fi;
      clip.frames.push_back(std::move(f));
    }
    const Tsg tsg = build_tsg(clip, 0.5);
    const auto groups = dynamic_groups(tsg);
    std::set<std::size_t> seen;
    for (const auto& g : groups) {
      P_REQUIRE(!g.members.empty());
      for (std::size_t m : g.members) {
        P_REQUIRE(tsg.nodes[m].kind == NodeKind::DynamicObj);
        P_REQUIRE(seen.insert(m).second);
      }
      // pooled feature = mean of members
      std::vector<double> mean(g.pooled_feature.size(), 0.0);
      for (std::size_t m : g.members)
        for (std::size_t i = 0; i < mean.size(); ++i)
          mean[i] += tsg.nodes[m].feature[i] /
                     static_cast<double>(g.members.size());
      for (std::size_t i = 0; i < mean.size(); ++i)
        P_REQUIRE(near(mean[i], g.pooled_feature[i], 1e-9));
    }
    std::size_t dyn = 0;
    for (const auto& n : tsg.nodes)
      if (n.kind == NodeKind::DynamicObj) ++dyn;
    P_REQUIRE(seen.size() == dyn);
  }
  return true;
}

// ---- hostsg ----

inline bool prop_similarity_is_distribution() {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 1 + rng.index(6);
    std::vector<std::vector<double>> cands;
    for (std::size_t i = 0; i < k; ++i) cands.push_back(rng.normal_vec(5));
    const auto s = similarity_scores(rng.normal_vec(5), cands);
    P_REQUIRE(s.size() == k);
    double z = 0.0;
    for (double x : s) {
      P_REQUIRE(x > 0.0 && x <= 1.0);
      z += x;
    }
    P_REQUIRE(near(z, 1.0, 1e-9));
  }
  return true;
}

inline bool prop_coref_edges_valid() {
  const auto samples = generate_dataset(tiny_gen(), 4, 1234);
  for (const auto& s : samples) {
    std::vector<Tsg> tsgs;
    for (const auto& c : s.clips) tsgs.push_back(build_tsg(c, 0.5));
    const HostSg host = build_hostsg(std::move(tsgs), 0.3);
    for (const auto& e : host.coref_edges) {
      P_REQUIRE(e.clip_a < e.clip_b);
      P_REQUIRE(e.weight == 1.0);
      P_REQUIRE(host.tsgs[e.clip_a].nodes[e.node_a].tag ==
                host.tsgs[e.clip_b].nodes[e.node_b].tag);
    }
  }
  return true;
}

inline bool prop_match_at_most_one_per_source() {
  const auto samples = generate_dataset(tiny_gen(), 3, 77);
  for (const auto& s : samples) {
    std::vector<Tsg> tsgs;
    for (const auto& c : s.clips) tsgs.push_back(build_tsg(c, 0.5));
    for (std::size_t a = 0; a < tsgs.size(); ++a)
      for (std::size_t b = 0; b < tsgs.size(); ++b) {
        if (a == b) continue;
        const auto matches = match_cross_clip(tsgs[a], tsgs[b], 0.3);
        std::set<std::size_t> static_sources;
        for (const auto& m : matches) {
          if (m.is_group) continue;
          P_REQUIRE(m.nodes_a.size() == 1 && m.nodes_b.size() == 1);
          P_REQUIRE(static_sources.insert(m.nodes_a[0]).second);
        }
      }
  }
  return true;
}

inline bool prop_no_shared_tags_no_coref() {
  Rng rng(42);
  auto make_clip = [&](int idx, const std::vector<std::string>& tags) {
    ClipRecord c;
    c.clip_index = idx;
    FrameSceneGraph f;
    f.frame_index = 0;
    for (std::size_t i = 0; i < tags.size(); ++i) {
      SgNode n;
      n.id = static_cast<NodeId>(i);
      n.tag = tags[i];
      const double x = 0.1 + 0.2 * static_cast<double>(i);
      n.box = {x, 0.1, x + 0.1, 0.3};
      n.feature = rng.normal_vec(4);
      f.nodes.push_back(std::move(n));
    }
    c.frames.push_back(std::move(f));
    return c;
  };
  std::vector<Tsg> tsgs;
  tsgs.push_back(build_tsg(make_clip(0, {"man", "tree"}), 0.5));
  tsgs.push_back(build_tsg(make_clip(1, {"dog", "door"}), 0.5));
  const HostSg host = build_hostsg(std::move(tsgs), 0.3);
  P_REQUIRE(host.coref_edges.empty());
  return true;
}

inline bool prop_noiseless_coref_recovered() {
  GeneratorConfig g = tiny_gen();
  g.noise = 0.0;
  const auto s = generate_synthetic(g, 2024);
  std::vector<Tsg> tsgs;
  for (const auto& c : s.clips) tsgs.push_back(build_tsg(c, 0.5));
  const HostSg host = build_hostsg(std::move(tsgs), 0.3);
  // the protagonist appears in every clip, so every adjacent clip pair must
  // carry at least one coref edge between its occurrences
  for (std::size_t a = 0; a + 1 < host.tsgs.size(); ++a) {
    bool found = false;
    for (const auto& e : host.coref_edges) {
      if (e.clip_a != a || e.clip_b != a + 1) continue;
      if (host.tsgs[e.clip_a].nodes[e.node_a].kind == NodeKind::DynamicObj)
        found = true;
    }
    P_REQUIRE(found);
  }
  return true;
}

// ---- ice ----

inline bool prop_ice_counts() {
  const auto samples = generate_dataset(tiny_gen(), 2, 55);
  for (const auto& s : samples) {
    std::vector<Tsg> tsgs;
    for (const auto& c : s.clips) tsgs.push_back(build_tsg(c, 0.5));
    const std::size_t N = tsgs.size();
    std::vector<std::size_t> obj_counts;
    for (const auto& t : tsgs) obj_counts.push_back(t.nodes.size());
    const IceGraph ice = build_ice(build_hostsg(std::move(tsgs), 0.3));
    P_REQUIRE(ice.node_count() == ice.total_objects + 11 * N);
    std::size_t predarg = 0, evolution = 0, mapping = 0;
    for (const auto& e : ice.edges) {
      if (e.kind == EdgeKind::PredArg) ++predarg;
      if (e.kind == EdgeKind::Evolution) ++evolution;
      if (e.kind == EdgeKind::Mapping) ++mapping;
    }
    P_REQUIRE(predarg == 10 * N);
    P_REQUIRE(evolution == N * (N - 1) / 2);
    std::size_t expect_map = 0;
    for (std::size_t c = 0; c < N; ++c) expect_map += 10 * obj_counts[c];
    P_REQUIRE(mapping == expect_map);
  }
  return true;
}

inline bool prop_ice_mapping_intra_clip() {
  const auto s = generate_synthetic(tiny_gen(), 90);
  std::vector<Tsg> tsgs;
  for (const auto& c : s.clips) tsgs.push_back(build_tsg(c, 0.5));
  const IceGraph ice = build_ice(build_hostsg(std::move(tsgs), 0.3));
  for (const auto& e : ice.edges) {
    if (e.kind != EdgeKind::Mapping) continue;
    P_REQUIRE(ice.nodes[e.src].kind == NodeKind::Argument);
    P_REQUIRE(ice.is_object(e.dst));
    P_REQUIRE(ice.nodes[e.src].clip == ice.nodes[e.dst].clip);
  }
  return true;
}

inline bool prop_ice_adjustable_weights() {
  const auto s = generate_synthetic(tiny_gen(), 91);
  std::vector<Tsg> tsgs;
  for (const auto& c : s.clips) tsgs.push_back(build_tsg(c, 0.5));
  const IceGraph ice = build_ice(build_hostsg(std::move(tsgs), 0.3));
  for (const auto& e : ice.edges) {
    P_REQUIRE(e.weight == 1.0);
    P_REQUIRE(e.adjustable() == (e.kind != EdgeKind::PredArg));
  }
  return true;
}

inline bool prop_ice_index_bijection() {
  const auto s = generate_synthetic(tiny_gen(), 92);
  std::vector<Tsg> tsgs;
  for (const auto& c : s.clips) tsgs.push_back(build_tsg(c, 0.5));
  const IceGraph ice = build_ice(build_hostsg(std::move(tsgs), 0.3));
  std::set<std::size_t> seen;
  for (std::size_t c = 0; c < ice.n_clips; ++c) {
    for (std::size_t o = 0; o < ice.obj_count(c); ++o) {
      const std::size_t idx = ice.object_index(c, o);
      P_REQUIRE(ice.is_object(idx));
      P_REQUIRE(ice.nodes[idx].clip == c);
      P_REQUIRE(seen.insert(idx).second);
    }
    P_REQUIRE(seen.insert(ice.predicate_index(c)).second);
    P_REQUIRE(ice.nodes[ice.predicate_index(c)].kind == NodeKind::Predicate);
    for (std::size_t r = 0; r < ice.n_roles; ++r) {
      const std::size_t idx = ice.arg_index(c, r);
      P_REQUIRE(ice.nodes[idx].kind == NodeKind::Argument);
      P_REQUIRE(ice.nodes[idx].role == r);
      P_REQUIRE(seen.insert(idx).second);
    }
  }
  P_REQUIRE(seen.size() == ice.node_count());
  return true;
}

inline bool prop_ice_event_init() {
  const auto s = generate_synthetic(tiny_gen(), 93);
  const Tsg tsg = build_tsg(s.clips[0], 0.5);
  std::vector<std::vector<double>> roles(10);
  Rng rng(3);
  for (auto& r : roles) r = rng.normal_vec(6);
  const auto events = init_event_nodes(tsg, roles);
  P_REQUIRE(events.size() == 11);
  P_REQUIRE(events[0].kind == NodeKind::Predicate);
  std::vector<double> mean(tsg.nodes[0].feature.size(), 0.0);
  for (const auto& n : tsg.nodes)
    for (std::size_t i = 0; i < mean.size(); ++i)
      mean[i] += n.feature[i] / static_cast<double>(tsg.nodes.size());
  for (std::size_t i = 0; i < mean.size(); ++i)
    P_REQUIRE(near(events[0].feature[i], mean[i], 1e-9));
  for (std::size_t r = 0; r < 10; ++r) {
    P_REQUIRE(events[r + 1].kind == NodeKind::Argument);
    P_REQUIRE(events[r + 1].role == r);
    P_REQUIRE(events[r + 1].feature == roles[r]);
  }
  return true;
}

// ---- differentiation core ----

inline bool prop_softmax_distribution() {
  nn::Tape t;
  const auto r = t.softmax(t.leaf(Tensor::vec({2.0, 0.0})));
  const Tensor& y = t.val(r);
  P_REQUIRE(near(y.at(0), std::exp(2.0) / (std::exp(2.0) + 1.0), 1e-12));
  P_REQUIRE(near(y.at(0) + y.at(1), 1.0, 1e-12));
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    nn::Tape t2;
    const auto s = t2.softmax(t2.leaf(Tensor::vec(rng.normal_vec(6))));
    double z = 0.0;
    for (double x : t2.val(s).v) {
      P_REQUIRE(x > 0.0);
      z += x;
    }
    P_REQUIRE(near(z, 1.0, 1e-9));
  }
  return true;
}

inline bool prop_kl_example() {
  nn::Tape t;
  const auto kl = t.kl_std_normal(t.leaf(Tensor::vec({1.0})),
                                  t.leaf(Tensor::vec({1.0})));
  P_REQUIRE(near(t.val(kl).item(), 0.5, 1e-15));
  // non-negativity across random points
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    nn::Tape t2;
    std::vector<double> mu = rng.normal_vec(4);
    std::vector<double> sg(4);
    for (auto& x : sg) x = 0.1 + rng.uniform();
    const auto r = t2.kl_std_normal(t2.leaf(Tensor::vec(mu)),
                                    t2.leaf(Tensor::vec(sg)));
    P_REQUIRE(t2.val(r).item() >= -1e-12);
  }
  return true;
}

inline bool prop_cross_entropy_matches_softmax() {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const auto logits = rng.normal_vec(5);
    const std::size_t y = rng.index(5);
    nn::Tape t;
    const auto l = t.leaf(Tensor::vec(logits));
    const double ce = t.val(t.cross_entropy(l, y)).item();
    const double p = t.val(t.softmax(l)).at(y);
    P_REQUIRE(near(ce, -std::log(p), 1e-9));
  }
  return true;
}

inline bool prop_tape_deterministic() {
  auto run = [](std::vector<double>* grads) {
    nn::Tape t;
    const auto x = t.leaf(Tensor::vec({0.3, -1.2, 0.7}));
    const auto W = t.leaf(Tensor::matrix(2, 3, {1, 2, 3, 4, 5, 6}));
    const auto loss = t.sum(t.tanh_(t.matvec(W, x)));
    t.backward(loss);
    *grads = t.grad(x).v;
    return t.val(loss).item();
  };
  std::vector<double> g1, g2;
  const double y1 = run(&g1);
  const double y2 = run(&g2);
  P_REQUIRE(y1 == y2);
  P_REQUIRE(g1 == g2);
  return true;
}

inline bool prop_nonfinite_detected() {
  nn::Tape t;
  try {
    t.exp_(t.leaf(Tensor::vec({1e6})));
    return false;
  } catch (const NumericError&) {
  }
  try {
    t.log_(t.leaf(Tensor::vec({0.0})));
    return false;
  } catch (const NumericError&) {
  }
  return true;
}

inline bool prop_composite_gradcheck() {
  Rng rng(15);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Tensor> point{Tensor::vec(rng.normal_vec(4)),
                              Tensor::matrix(3, 4, rng.normal_vec(12)),
                              Tensor::vec(rng.normal_vec(3))};
    const auto rep = nn::grad_check(
        [](nn::Tape& t, const std::vector<nn::Tape::Ref>& in) {
          const auto h = t.tanh_(t.matvec(in[1], in[0]));
          const auto mixed = t.add(t.mul(h, in[2]), t.softmax(h));
          return t.mean(mixed);
        },
        point);
    P_REQUIRE(rep.ok(1e-4));
  }
  return true;
}

inline bool prop_corrupted_gradient_detected() {
  // negative control: a value path that bypasses the tape has zero analytic
  // gradient but a nonzero numeric one; the checker must flag it
  const auto bad = nn::grad_check(
      [](nn::Tape& t, const std::vector<nn::Tape::Ref>& in) {
        const double v = t.val(in[0]).at(0);
        return t.add(t.scalar(v * v), t.scale(t.sum(in[0]), 0.0));
      },
      {Tensor::vec({1.3, 0.4})});
  P_REQUIRE(!bad.ok(1e-4));
  return true;
}

// ---- gnn ----

inline bool prop_gat_weight_one_neutral() {
  Rng rng(51);
  nn::ParamStore ps(3);
  auto run = [&](bool with_weight) {
    nn::Session s(ps);
    nn::Tape& t = s.tape();
    std::vector<nn::Tape::Ref> rows;
    Rng r2(99);
    for (int i = 0; i < 4; ++i) rows.push_back(t.leaf(Tensor::vec(r2.normal_vec(6))));
    nn::Adjacency adj(4);
    adj.link_undirected(0, 1, with_weight
                                 ? std::optional<nn::Tape::Ref>(
                                       t.leaf(Tensor::scalar(1.0)))
                                 : std::nullopt);
    adj.link_undirected(2, 3);
    return t.val(nn::gat_layer(s, "g", t.stack_rows(rows), adj, 2, 6)).v;
  };
  P_REQUIRE(run(true) == run(false));
  (void)rng;
  return true;
}

inline bool prop_gat_weight_zero_deletes() {
  nn::ParamStore ps(4);
  auto run = [&](bool zero_weight_edge) {
    nn::Session s(ps);
    nn::Tape& t = s.tape();
    std::vector<nn::Tape::Ref> rows;
    Rng r2(98);
    for (int i = 0; i < 4; ++i) rows.push_back(t.leaf(Tensor::vec(r2.normal_vec(6))));
    nn::Adjacency adj(4);
    adj.link_undirected(0, 1);
    if (zero_weight_edge)
      adj.link_undirected(2, 3, t.leaf(Tensor::scalar(0.0)));
    return t.val(nn::gat_layer(s, "g", t.stack_rows(rows), adj, 2, 6)).v;
  };
  P_REQUIRE(run(true) == run(false));
  return true;
}

inline bool prop_gat_attention_ratio() {
  // identical neighbor states, attention scores zeroed: edge weights 1 and
  // 0.5 must mix in exactly a 2:1 ratio against the self-loop
  nn::ParamStore ps(5);
  const std::size_t d = 3;
  ps.ensure("g.h0.W", {d, d});
  ps.ensure("g.h0.a_src", {d});
  ps.ensure("g.h0.a_dst", {d});
  auto& W = ps.value("g.h0.W");
  W.v.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) W.at(i, i) = 1.0;
  ps.value("g.h0.a_src").v.assign(d, 0.0);
  ps.value("g.h0.a_dst").v.assign(d, 0.0);

  nn::Session s(ps);
  nn::Tape& t = s.tape();
  const std::vector<double> h0{1.0, 0.0, 0.0};
  const std::vector<double> h1{0.0, 1.0, 0.0};
  const std::vector<double> h2{0.0, 0.0, 1.0};
  const auto states = t.stack_rows({t.leaf(Tensor::vec(h0)),
                                    t.leaf(Tensor::vec(h1)),
                                    t.leaf(Tensor::vec(h2))});
  nn::Adjacency adj(3);
  adj.in[0].push_back({1, t.leaf(Tensor::scalar(1.0))});
  adj.in[0].push_back({2, t.leaf(Tensor::scalar(0.5))});
  const auto out = t.val(nn::gat_layer(s, "g", states, adj, 1, d));
  // alpha over {self, n1, n2} proportional to {1, 1, 0.5}
  const double a = 1.0 / 2.5, b = 1.0 / 2.5, c = 0.5 / 2.5;
  P_REQUIRE(near(out.at(0, 0), std::tanh(a), 1e-12));
  P_REQUIRE(near(out.at(0, 1), std::tanh(b), 1e-12));
  P_REQUIRE(near(out.at(0, 2), std::tanh(c), 1e-12));
  P_REQUIRE(near(out.at(0, 1) / out.at(0, 2),
                 std::tanh(b) / std::tanh(c), 1e-12));
  return true;
}

inline bool prop_gat_rows_are_local() {
  // a node with no edges is influenced only by its own state
  nn::ParamStore ps(6);
  auto run = [&](double lone_value) {
    nn::Session s(ps);
    nn::Tape& t = s.tape();
    Rng r2(77);
    std::vector<nn::Tape::Ref> rows;
    for (int i = 0; i < 3; ++i) rows.push_back(t.leaf(Tensor::vec(r2.normal_vec(4))));
    rows.push_back(t.leaf(Tensor::vec({lone_value, 0.1, 0.2, 0.3})));
    nn::Adjacency adj(4);
    adj.link_undirected(0, 1);
    adj.link_undirected(1, 2);
    const auto out = t.val(nn::gat_layer(s, "g", t.stack_rows(rows), adj, 2, 4));
    std::vector<double> connected;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) connected.push_back(out.at(i, j));
    return connected;
  };
  P_REQUIRE(run(0.5) == run(9.5));
  return true;
}

inline bool prop_ggnn_is_dag() {
  nn::ParamStore ps(7);
  nn::Session s(ps);
  nn::Tape& t = s.tape();
  Rng rng(55);
  std::vector<nn::Tape::Ref> preds;
  for (int i = 0; i < 4; ++i) preds.push_back(t.leaf(Tensor::vec(rng.normal_vec(5))));
  const auto out = nn::ggnn_evolve(s, "gg", preds);
  // gradient of out[1] w.r.t. preds[2], preds[3] must vanish
  t.backward(t.sum(out[1]));
  for (std::size_t j = 2; j < 4; ++j)
    for (double g : t.grad(preds[j]).v) P_REQUIRE(g == 0.0);
  // and depend on preds[0] or preds[1]
  double dep = 0.0;
  for (double g : t.grad(preds[1]).v) dep += std::abs(g);
  P_REQUIRE(dep > 0.0);
  return true;
}

inline bool prop_ggnn_first_gets_zero_message() {
  nn::ParamStore ps(8);
  Rng rng(56);
  const auto feat = rng.normal_vec(5);
  std::vector<double> a, b;
  {
    nn::Session s(ps);
    nn::Tape& t = s.tape();
    const auto out = nn::ggnn_evolve(
        s, "gg", {t.leaf(Tensor::vec(feat)), t.leaf(Tensor::vec(feat))});
    a = t.val(out[0]).v;
  }
  {
    nn::Session s(ps);
    nn::Tape& t = s.tape();
    const auto cell = nn::gru_cell(s, "gg.cell", t.leaf(Tensor::vec(feat)),
                                   t.leaf(Tensor::zeros({5})));
    b = t.val(cell).v;
  }
  P_REQUIRE(a == b);
  return true;
}

// ---- refinement ----

struct RefineFixture {
  nn::ParamStore ps{11};
  IceGraph ice;
  nn::ModelConfig mc = tiny_model();
  nn::Vocab vocab;
  SyntheticSample sample;

  RefineFixture() {
    sample = generate_synthetic(tiny_gen(), 3000);
    vocab = tiny_vocab({sample});
    ice = nn::preprocess(sample, mc, 1);
  }
};

inline bool prop_refine_weight_range() {
  RefineFixture fx;
  nn::Session s(fx.ps);
  Rng rng(0);
  const auto out = nn::model_forward(s, fx.mc, fx.vocab, fx.ice, false, rng);
  for (std::size_t e = 0; e < out.weights.size(); ++e) {
    if (!out.weights[e]) continue;
    const double w = s.tape().val(*out.weights[e]).item();
    P_REQUIRE(w >= 0.0 && w <= 1.0 + 1e-12);
  }
  return true;
}

inline bool prop_refine_predarg_fixed() {
  RefineFixture fx;
  nn::Session s(fx.ps);
  Rng rng(0);
  const auto out = nn::model_forward(s, fx.mc, fx.vocab, fx.ice, false, rng);
  for (std::size_t e = 0; e < fx.ice.edges.size(); ++e)
    if (fx.ice.edges[e].kind == EdgeKind::PredArg)
      P_REQUIRE(!out.weights[e].has_value());
  return true;
}

inline bool prop_refine_coref_tag_mismatch_cut() {
  RefineFixture fx;
  // inject a bogus coreference edge between different tags
  std::size_t a = 0, b = 1;
  bool found = false;
  for (std::size_t i = 0; i < fx.ice.total_objects && !found; ++i)
    for (std::size_t j = i + 1; j < fx.ice.total_objects && !found; ++j)
      if (fx.ice.nodes[i].tag != fx.ice.nodes[j].tag) {
        a = i;
        b = j;
        found = true;
      }
  P_REQUIRE(found);
  fx.ice.edges.push_back({a, b, EdgeKind::Coref, 1.0, ""});
  nn::Session s(fx.ps);
  Rng rng(0);
  const auto out = nn::model_forward(s, fx.mc, fx.vocab, fx.ice, false, rng);
  const std::size_t e = fx.ice.edges.size() - 1;
  P_REQUIRE(out.weights[e].has_value());
  P_REQUIRE(s.tape().val(*out.weights[e]).item() == 0.0);
  return true;
}

inline bool prop_refine_max_normalized() {
  RefineFixture fx;
  nn::Session s(fx.ps);
  Rng rng(0);
  const auto out = nn::model_forward(s, fx.mc, fx.vocab, fx.ice, false, rng);
  // per source node with any surviving edge, the max weight is exactly 1
  std::map<std::size_t, double> max_by_src;
  for (std::size_t e = 0; e < fx.ice.edges.size(); ++e) {
    if (!out.weights[e]) continue;
    const double w = s.tape().val(*out.weights[e]).item();
    auto& m = max_by_src[fx.ice.edges[e].src];
    m = std::max(m, w);
  }
  for (const auto& [src, m] : max_by_src)
    P_REQUIRE(m == 0.0 || near(m, 1.0, 1e-9));
  return true;
}

inline bool prop_gaussian_sigma_zero_is_mu() {
  nn::Tape t;
  const auto mu = t.leaf(Tensor::vec({0.3, -0.7}));
  const auto sg = t.leaf(Tensor::vec({0.0, 0.0}));
  const auto z = t.gaussian_sample(mu, sg, Tensor::vec({1.7, -2.9}));
  P_REQUIRE(t.val(z).v == t.val(mu).v);
  return true;
}

inline bool prop_gib_loss_positive() {
  RefineFixture fx;
  nn::Session s(fx.ps);
  Rng rng(0);
  const auto out = nn::model_forward(s, fx.mc, fx.vocab, fx.ice, false, rng);
  Rng grng(1);
  const auto l =
      nn::gib_loss(s, "gib", out.states, fx.ice, fx.sample.gold.verbs,
                   fx.sample.gold.relations, fx.vocab.verbs,
                   fx.vocab.relations, 1.0, grng);
  P_REQUIRE(s.tape().val(l).item() > 0.0);
  return true;
}

// ---- decode ----

inline bool prop_decode_deterministic() {
  nn::ParamStore ps(21);
  Rng rng(3);
  const auto state = rng.normal_vec(6);
  std::vector<std::vector<double>> mem;
  for (int i = 0; i < 3; ++i) mem.push_back(rng.normal_vec(6));
  auto run = [&]() {
    nn::Session s(ps);
    nn::Tape& t = s.tape();
    std::vector<nn::Tape::Ref> m;
    for (const auto& v : mem) m.push_back(t.leaf(Tensor::vec(v)));
    nn::DecoderConfig dc;
    dc.max_len = 6;
    dc.beam = 1;
    return nn::decode_role(s, "dec", t.leaf(Tensor::vec(state)), m, 9, dc);
  };
  P_REQUIRE(run() == run());
  return true;
}

inline bool prop_decode_respects_max_len() {
  nn::ParamStore ps(22);
  Rng rng(4);
  for (std::size_t max_len : {0ul, 1ul, 3ul, 7ul}) {
    nn::Session s(ps);
    nn::Tape& t = s.tape();
    std::vector<nn::Tape::Ref> mem{t.leaf(Tensor::vec(rng.normal_vec(5)))};
    nn::DecoderConfig dc;
    dc.max_len = max_len;
    dc.beam = 2;
    const auto out = nn::decode_role(
        s, "dec", t.leaf(Tensor::vec(rng.normal_vec(5))), mem, 7, dc);
    P_REQUIRE(out.size() <= max_len);
    for (int tok : out)
      P_REQUIRE(tok != nn::kPadToken && tok != nn::kEosToken);
  }
  return true;
}

inline bool prop_text_loss_counts_tokens() {
  nn::ParamStore ps(23);
  nn::Session s(ps);
  nn::Tape& t = s.tape();
  Rng rng(5);
  std::vector<nn::Tape::Ref> mem{t.leaf(Tensor::vec(rng.normal_vec(5)))};
  const auto state = t.leaf(Tensor::vec(rng.normal_vec(5)));
  std::size_t n = 0;
  nn::role_text_loss(s, "dec", state, mem, {4, 0, 5}, 8, &n);
  P_REQUIRE(n == 3);  // two real tokens + eos, pad skipped
  std::size_t n2 = 0;
  const auto l2 = nn::role_text_loss(s, "dec", state, mem, {}, 8, &n2);
  P_REQUIRE(n2 == 1);  // just eos
  P_REQUIRE(t.val(l2).item() > 0.0);
  return true;
}

inline bool prop_loss_linearity() {
  RefineFixture fx;
  fx.mc.eta1 = 0.7;
  fx.mc.eta2 = 0.3;
  fx.mc.eta3 = 0.9;
  nn::Session s(fx.ps);
  Rng rng(0);
  const auto out = nn::model_forward(s, fx.mc, fx.vocab, fx.ice, false, rng);
  nn::LossBreakdown lb;
  Rng lrng(1);
  nn::model_loss(s, fx.mc, fx.vocab, fx.ice, fx.sample.gold, out, lrng, &lb);
  P_REQUIRE(near(lb.total,
                 lb.verb + 0.7 * lb.rel + 0.3 * lb.text + 0.9 * lb.gib,
                 1e-9));
  return true;
}

inline bool prop_topk_classes_ties_to_smaller() {
  const auto r = nn::top_k_classes(Tensor::vec({1.0, 3.0, 3.0, 0.5}), 3);
  P_REQUIRE((r == std::vector<std::size_t>{1, 2, 0}));
  return true;
}

// ---- harness ----

inline bool prop_metric_examples() {
  P_REQUIRE(near(rouge_l({10, 11, 12}, {10, 11, 13}), 2.0 / 3.0, 1e-12));
  P_REQUIRE(rouge_l({}, {}) == 1.0);
  P_REQUIRE(rouge_l({1}, {}) == 0.0);
  P_REQUIRE(rouge_l({}, {1}) == 0.0);
  const std::vector<std::vector<std::size_t>> rk{{0, 1}, {2, 0}, {1, 2}};
  const std::vector<int> gold{0, 0, 2};
  P_REQUIRE(near(acc_at_k(rk, gold, 1), 1.0 / 3.0, 1e-12));
  P_REQUIRE(near(acc_at_k(rk, gold, 2), 1.0, 1e-12));
  P_REQUIRE(near(macro_recall_at_k(rk, gold, 1), 0.25, 1e-12));
  std::map<int, int> pred{{0, 1}, {1, 2}}, goldm{{0, 1}, {1, 1}, {2, 2}};
  // class 1: one of two correct; class 2: zero of one
  P_REQUIRE(near(macro_accuracy(pred, goldm), 0.25, 1e-12));
  return true;
}

inline bool prop_metrics_match_bruteforce() {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + rng.index(20), classes = 2 + rng.index(8);
    std::vector<std::vector<std::size_t>> rk(n);
    std::vector<int> gold(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = static_cast<int>(rng.index(classes));
      std::vector<std::size_t> order(classes);
      for (std::size_t c = 0; c < classes; ++c) order[c] = c;
      for (std::size_t c = classes; c > 1; --c)
        std::swap(order[c - 1], order[rng.index(c)]);
      rk[i] = order;
    }
    for (std::size_t k = 1; k <= classes; ++k) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (rk[i][j] == static_cast<std::size_t>(gold[i])) {
            ++hits;
            break;
          }
      P_REQUIRE(near(acc_at_k(rk, gold, k),
                     static_cast<double>(hits) / static_cast<double>(n),
                     1e-12));
    }
  }
  return true;
}

inline bool prop_checkpoint_roundtrip() {
  nn::ParamStore ps(31);
  ps.ensure("a.W", {3, 4});
  ps.ensure("b", {5});
  const std::string path = "/tmp/hostsg_prop_ckpt.json";
  ps.save(path);
  nn::ParamStore loaded;
  loaded.load(path);
  P_REQUIRE(loaded.count() == 2);
  P_REQUIRE(loaded.value("a.W").v == ps.value("a.W").v);
  P_REQUIRE(loaded.value("b").shape == std::vector<std::size_t>{5});
  return true;
}

inline bool prop_param_init_deterministic() {
  nn::ParamStore a(17), b(17), c(18);
  a.ensure("x", {4, 4});
  b.ensure("x", {4, 4});
  c.ensure("x", {4, 4});
  P_REQUIRE(a.value("x").v == b.value("x").v);
  P_REQUIRE(a.value("x").v != c.value("x").v);
  return true;
}

inline bool prop_train_deterministic() {
  const auto samples = generate_dataset(tiny_gen(), 2, 2222);
  const auto vocab = tiny_vocab(samples);
  nn::ModelConfig mc = tiny_model();
  mc.eta2 = 0.0;
  std::vector<IceGraph> graphs;
  for (const auto& s : samples) graphs.push_back(nn::preprocess(s, mc, 1));
  auto run = [&]() {
    nn::TrainConfig tc;
    tc.epochs = 2;
    tc.batch = 2;
    tc.lr = 1e-3;
    nn::ParamStore ps(tc.seed);
    nn::train_model(ps, mc, vocab, samples, graphs, tc);
    std::vector<double> flat;
    ps.for_each([&](const std::string&, Tensor& v, Tensor&) {
      flat.insert(flat.end(), v.v.begin(), v.v.end());
    });
    return flat;
  };
  P_REQUIRE(run() == run());
  return true;
}

inline bool prop_evaluate_is_pure() {
  const auto samples = generate_dataset(tiny_gen(), 2, 3333);
  const auto vocab = tiny_vocab(samples);
  const nn::ModelConfig mc = tiny_model();
  std::vector<IceGraph> graphs;
  for (const auto& s : samples) graphs.push_back(nn::preprocess(s, mc, 1));
  nn::ParamStore ps(9);
  // materialize parameters once so both calls see identical state
  const auto e1 = nn::evaluate(ps, mc, vocab, samples, graphs);
  std::vector<double> before;
  ps.for_each([&](const std::string&, Tensor& v, Tensor&) {
    before.insert(before.end(), v.v.begin(), v.v.end());
  });
  const auto e2 = nn::evaluate(ps, mc, vocab, samples, graphs);
  std::vector<double> after;
  ps.for_each([&](const std::string&, Tensor& v, Tensor&) {
    after.insert(after.end(), v.v.begin(), v.v.end());
  });
  P_REQUIRE(before == after);
  P_REQUIRE(e1.verb_acc1 == e2.verb_acc1);
  P_REQUIRE(e1.rel_macro_acc == e2.rel_macro_acc);
  P_REQUIRE(e1.rouge == e2.rouge);
  return true;
}

inline bool prop_zero_epochs_keeps_params() {
  const auto samples = generate_dataset(tiny_gen(), 1, 4444);
  const auto vocab = tiny_vocab(samples);
  const nn::ModelConfig mc = tiny_model();
  std::vector<IceGraph> graphs{nn::preprocess(samples[0], mc, 1)};
  nn::ParamStore ps(13);
  nn::evaluate(ps, mc, vocab, samples, graphs);  // materialize
  std::vector<double> before;
  ps.for_each([&](const std::string&, Tensor& v, Tensor&) {
    before.insert(before.end(), v.v.begin(), v.v.end());
  });
  nn::TrainConfig tc;
  tc.epochs = 0;
  nn::train_model(ps, mc, vocab, samples, graphs, tc);
  std::vector<double> after;
  ps.for_each([&](const std::string&, Tensor& v, Tensor&) {
    after.insert(after.end(), v.v.begin(), v.v.end());
  });
  P_REQUIRE(before == after);
  return true;
}

inline bool prop_pipeline_deterministic() {
  const auto s = generate_synthetic(tiny_gen(), 5555);
  const nn::ModelConfig mc = tiny_model();
  const auto g1 = nn::preprocess(s, mc, 7);
  const auto g2 = nn::preprocess(s, mc, 7);
  P_REQUIRE(g1.node_count() == g2.node_count());
  P_REQUIRE(g1.edges.size() == g2.edges.size());
  for (std::size_t e = 0; e < g1.edges.size(); ++e) {
    P_REQUIRE(g1.edges[e].src == g2.edges[e].src);
    P_REQUIRE(g1.edges[e].dst == g2.edges[e].dst);
    P_REQUIRE(g1.edges[e].kind == g2.edges[e].kind);
  }
  return true;
}

inline bool prop_synthetic_generator_deterministic() {
  const auto a = generate_dataset(tiny_gen(), 2, 42);
  const auto b = generate_dataset(tiny_gen(), 2, 42);
  P_REQUIRE(serialize_dataset(a) == serialize_dataset(b));
  return true;
}

inline bool prop_union_find_clusters() {
  UnionFind uf(6);
  uf.unite(0, 1);
  uf.unite(1, 2);
  uf.unite(4, 5);
  P_REQUIRE(uf.same(0, 2));
  P_REQUIRE(!uf.same(0, 3));
  const auto cs = uf.clusters();
  P_REQUIRE(cs.size() == 3);
  std::size_t total = 0;
  for (const auto& c : cs) total += c.size();
  P_REQUIRE(total == 6);
  return true;
}

inline bool prop_config_strictness() {
  const Config c = Config::parse("a = 1.5\nb = hello # comment\nflag = true\n");
  P_REQUIRE(c.get_double("a", 0.0) == 1.5);
  P_REQUIRE(c.get_string("b", "") == "hello");
  P_REQUIRE(c.get_bool("flag", false));
  P_REQUIRE(c.get_int("missing", 9) == 9);
  try {
    Config::parse("novalue\n");
    return false;
  } catch (const ConfigError&) {
  }
  try {
    c.get_int("a", 0);  // 1.5 is not an integer
    return false;
  } catch (const ConfigError&) {
  }
  return true;
}

inline std::vector<Property> all_properties() {
  return {
      {"ingest-roundtrip", prop_ingest_roundtrip},
      {"ingest-duplicate-id-rejected", prop_ingest_duplicate_id_rejected},
      {"ingest-invalid-box-rejected", prop_ingest_invalid_box_rejected},
      {"ingest-dangling-edge-rejected", prop_ingest_dangling_edge_rejected},
      {"topk-keeps-highest-scores-in-order",
       prop_topk_keeps_highest_scores_in_order},
      {"topk-no-dangling-edges", prop_topk_no_dangling_edges},
      {"keyframes-count-and-order", prop_keyframes_count_and_order},
      {"keyframes-deterministic", prop_keyframes_deterministic},
      {"iou-basics", prop_iou_basics},
      {"classify-examples", prop_classify_examples},
      {"tsg-covers-all-occurrences", prop_tsg_covers_all_occurrences},
      {"tsg-merge-clusters-valid", prop_tsg_merge_clusters_valid},
      {"tsg-scene-edges-preserved", prop_tsg_scene_edges_preserved},
      {"tsg-motion-constraints", prop_tsg_motion_constraints},
      {"tsg-relabel-isomorphic", prop_tsg_relabel_isomorphic},
      {"dynamic-groups-partition", prop_dynamic_groups_partition},
      {"similarity-is-distribution", prop_similarity_is_distribution},
      {"coref-edges-valid", prop_coref_edges_valid},
      {"match-at-most-one-per-source", prop_match_at_most_one_per_source},
      {"no-shared-tags-no-coref", prop_no_shared_tags_no_coref},
      {"noiseless-coref-recovered", prop_noiseless_coref_recovered},
      {"ice-counts", prop_ice_counts},
      {"ice-mapping-intra-clip", prop_ice_mapping_intra_clip},
      {"ice-adjustable-weights", prop_ice_adjustable_weights},
      {"ice-index-bijection", prop_ice_index_bijection},
      {"ice-event-init", prop_ice_event_init},
      {"softmax-distribution", prop_softmax_distribution},
      {"kl-example-and-nonnegative", prop_kl_example},
      {"cross-entropy-matches-softmax", prop_cross_entropy_matches_softmax},
      {"tape-deterministic", prop_tape_deterministic},
      {"nonfinite-detected", prop_nonfinite_detected},
      {"composite-gradcheck", prop_composite_gradcheck},
      {"corrupted-gradient-detected", prop_corrupted_gradient_detected},
      {"gat-weight-one-neutral", prop_gat_weight_one_neutral},
      {"gat-weight-zero-deletes", prop_gat_weight_zero_deletes},
      {"gat-attention-ratio", prop_gat_attention_ratio},
      {"gat-rows-are-local", prop_gat_rows_are_local},
      {"ggnn-is-dag", prop_ggnn_is_dag},
      {"ggnn-first-gets-zero-message", prop_ggnn_first_gets_zero_message},
      {"refine-weight-range", prop_refine_weight_range},
      {"refine-predarg-fixed", prop_refine_predarg_fixed},
      {"refine-coref-tag-mismatch-cut", prop_refine_coref_tag_mismatch_cut},
      {"refine-max-normalized", prop_refine_max_normalized},
      {"gaussian-sigma-zero-is-mu", prop_gaussian_sigma_zero_is_mu},
      {"gib-loss-positive", prop_gib_loss_positive},
      {"decode-deterministic", prop_decode_deterministic},
      {"decode-respects-max-len", prop_decode_respects_max_len},
      {"text-loss-counts-tokens", prop_text_loss_counts_tokens},
      {"loss-linearity", prop_loss_linearity},
      {"topk-classes-ties-to-smaller", prop_topk_classes_ties_to_smaller},
      {"metric-examples", prop_metric_examples},
      {"metrics-match-bruteforce", prop_metrics_match_bruteforce},
      {"checkpoint-roundtrip", prop_checkpoint_roundtrip},
      {"param-init-deterministic", prop_param_init_deterministic},
      {"train-deterministic", prop_train_deterministic},
      {"evaluate-is-pure", prop_evaluate_is_pure},
      {"zero-epochs-keeps-params", prop_zero_epochs_keeps_params},
      {"pipeline-deterministic", prop_pipeline_deterministic},
      {"synthetic-generator-deterministic",
       prop_synthetic_generator_deterministic},
      {"union-find-clusters", prop_union_find_clusters},
      {"config-strictness", prop_config_strictness},
  };
}

}  // namespace proptest
