#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hostsg/data.hpp"
#include "hostsg/errors.hpp"

namespace hostsg {

using json = nlohmann::json;

namespace detail {

inline const json& expect(const json& j, const char* key,
                          const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw DataError("missing field " + path + "/" + key);
  return j.at(key);
}

template <typename T>
T get_as(const json& j, const char* key, const std::string& path) {
  const json& v = expect(j, key, path);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw DataError("wrong type at " + path + "/" + key);
  }
}

}  // namespace detail

inline json frame_to_json(const FrameSceneGraph& f) {
  json nodes = json::array();
  for (const auto& n : f.nodes) {
    nodes.push_back({{"id", n.id},
                     {"tag", n.tag},
                     {"box", {n.box.x1, n.box.y1, n.box.x2, n.box.y2}},
                     {"score", n.score},
                     {"feature", n.feature}});
  }
  json edges = json::array();
  for (const auto& e : f.edges)
    edges.push_back(json::array({e.subject, e.relation, e.object}));
  return json{{"frame_index", f.frame_index},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
}

inline FrameSceneGraph frame_from_json(const json& j, const std::string& path) {
  FrameSceneGraph f;
  f.frame_index = detail::get_as<int>(j, "frame_index", path);
  const json& nodes = detail::expect(j, "nodes", path);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string np = path + "/nodes/" + std::to_string(i);
    const json& nj = nodes.at(i);
    SgNode n;
    n.id = detail::get_as<NodeId>(nj, "id", np);
    n.tag = detail::get_as<std::string>(nj, "tag", np);
    const auto box = detail::get_as<std::vector<double>>(nj, "box", np);
    if (box.size() != 4) throw DataError("box needs 4 numbers at " + np);
    n.box = {box[0], box[1], box[2], box[3]};
    n.score = detail::get_as<double>(nj, "score", np);
    n.feature = detail::get_as<std::vector<double>>(nj, "feature", np);
    f.nodes.push_back(std::move(n));
  }
  const json& edges = detail::expect(j, "edges", path);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ep = path + "/edges/" + std::to_string(i);
    const json& ej = edges.at(i);
    if (!ej.is_array() || ej.size() != 3)
      throw DataError("edge must be [subj, rel, obj] at " + ep);
    SgEdge e;
    try {
      e.subject = ej.at(0).get<NodeId>();
      e.relation = ej.at(1).get<std::string>();
      e.object = ej.at(2).get<NodeId>();
    } catch (const json::exception&) {
      throw DataError("wrong edge element type at " + ep);
    }
    f.edges.push_back(std::move(e));
  }
  validate_frame(f, 0, path);
  return f;
}

inline json gold_to_json(const GoldAnnotations& g) {
  auto clusters_to_json = [](const std::vector<std::vector<NodeKey>>& cs) {
    json out = json::array();
    for (const auto& c : cs) {
      json cluster = json::array();
      for (const auto& k : c)
        cluster.push_back(json::array({k.clip, k.frame, k.node}));
      out.push_back(std::move(cluster));
    }
    return out;
  };
  json args = json::array();
  for (const auto& m : g.args) {
    json per_clip = json::object();
    for (const auto& [role, toks] : m) per_clip[role] = toks;
    args.push_back(std::move(per_clip));
  }
  json rels = json::array();
  for (const auto& [pair, label] : g.relations)
    rels.push_back(json::array({pair.first, pair.second, label}));
  return json{{"merges", clusters_to_json(g.merges)},
              {"corefs", clusters_to_json(g.corefs)},
              {"verbs", g.verbs},
              {"args", std::move(args)},
              {"relations", std::move(rels)}};
}

inline GoldAnnotations gold_from_json(const json& j, const std::string& path) {
  GoldAnnotations g;
  g.present = true;
  auto clusters_from_json = [&](const char* key) {
    std::vector<std::vector<NodeKey>> cs;
    for (const auto& cj : detail::expect(j, key, path)) {
      std::vector<NodeKey> c;
      for (const auto& kj : cj) {
        if (!kj.is_array() || kj.size() != 3)
          throw DataError("node key must be [clip, frame, node] in " + path +
                          "/" + key);
        c.push_back({kj.at(0).get<int>(), kj.at(1).get<int>(),
                     kj.at(2).get<NodeId>()});
      }
      cs.push_back(std::move(c));
    }
    return cs;
  };
  g.merges = clusters_from_json("merges");
  g.corefs = clusters_from_json("corefs");
  g.verbs = detail::get_as<std::vector<int>>(j, "verbs", path);
  for (const auto& aj : detail::expect(j, "args", path)) {
    std::map<std::string, std::vector<int>> m;
    for (const auto& [role, toks] : aj.items())
      m[role] = toks.get<std::vector<int>>();
    g.args.push_back(std::move(m));
  }
  for (const auto& rj : detail::expect(j, "relations", path)) {
    if (!rj.is_array() || rj.size() != 3)
      throw DataError("relation must be [i, j, label] in " + path);
    g.relations[{rj.at(0).get<int>(), rj.at(1).get<int>()}] =
        rj.at(2).get<int>();
  }
  return g;
}

inline json sample_to_json(const SyntheticSample& s) {
  json clips = json::array();
  for (const auto& c : s.clips) {
    json frames = json::array();
    for (const auto& f : c.frames) frames.push_back(frame_to_json(f));
    clips.push_back(
        {{"clip_index", c.clip_index}, {"frames", std::move(frames)}});
  }
  json out{{"clips", std::move(clips)}};
  if (s.gold.present) out["gold"] = gold_to_json(s.gold);
  return out;
}

inline SyntheticSample sample_from_json(const json& j,
                                        const std::string& path) {
  SyntheticSample s;
  const json& clips = detail::expect(j, "clips", path);
  for (std::size_t ci = 0; ci < clips.size(); ++ci) {
    const std::string cp = path + "/clips/" + std::to_string(ci);
    const json& cj = clips.at(ci);
    ClipRecord c;
    c.clip_index = detail::get_as<int>(cj, "clip_index", cp);
    const json& frames = detail::expect(cj, "frames", cp);
    for (std::size_t fi = 0; fi < frames.size(); ++fi)
      c.frames.push_back(frame_from_json(
          frames.at(fi), cp + "/frames/" + std::to_string(fi)));
    s.clips.push_back(std::move(c));
  }
  if (j.contains("gold")) s.gold = gold_from_json(j.at("gold"), path + "/gold");
  return s;
}

// Canonical document: {"samples": [...]}. serialize(parse(x)) is the
// identity on canonical bytes (nlohmann sorts object keys and prints
// shortest round-trip doubles).
inline std::string serialize_dataset(const std::vector<SyntheticSample>& ss) {
  json samples = json::array();
  for (const auto& s : ss) samples.push_back(sample_to_json(s));
  return json{{"samples", std::move(samples)}}.dump();
}

inline std::vector<SyntheticSample> parse_dataset(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw DataError("malformed JSON at byte " + std::to_string(e.byte) + ": " +
                    e.what());
  }
  std::vector<SyntheticSample> out;
  const json& samples = detail::expect(j, "samples", "");
  for (std::size_t i = 0; i < samples.size(); ++i)
    out.push_back(
        sample_from_json(samples.at(i), "/samples/" + std::to_string(i)));
  return out;
}

}  // namespace hostsg
