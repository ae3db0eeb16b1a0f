#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "hostsg/data.hpp"
#include "hostsg/errors.hpp"
#include "hostsg/rng.hpp"

namespace hostsg {

// Keeps the k highest-score nodes (ties broken by ascending node id) and the
// edges whose endpoints both survive.
inline FrameSceneGraph top_k_nodes(const FrameSceneGraph& frame,
                                   std::size_t k) {
  if (k < 1) throw ConfigError("top_k_nodes: k must be >= 1");
  if (frame.nodes.size() <= k) return frame;
  std::vector<std::size_t> order(frame.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (frame.nodes[a].score != frame.nodes[b].score)
      return frame.nodes[a].score > frame.nodes[b].score;
    return frame.nodes[a].id < frame.nodes[b].id;
  });
  order.resize(k);
  std::sort(order.begin(), order.end());  // keep original node order

  FrameSceneGraph out;
  out.frame_index = frame.frame_index;
  std::unordered_set<NodeId> kept;
  for (std::size_t i : order) {
    out.nodes.push_back(frame.nodes[i]);
    kept.insert(frame.nodes[i].id);
  }
  for (const auto& e : frame.edges)
    if (kept.count(e.subject) && kept.count(e.object)) out.edges.push_back(e);
  return out;
}

namespace detail {

inline std::vector<double> frame_descriptor(const FrameSceneGraph& f) {
  if (f.nodes.empty()) return {};
  std::vector<double> d(f.nodes[0].feature.size(), 0.0);
  for (const auto& n : f.nodes)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += n.feature[i];
  for (auto& x : d) x /= static_cast<double>(f.nodes.size());
  return d;
}

inline double sq_dist(const std::vector<double>& a,
                      const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace detail

// Clustering-based keyframe extraction: seeded k-means (farthest-point init,
// <= 50 iterations) over frame descriptors; returns the frame nearest each
// centroid, in temporal order.
inline std::vector<FrameSceneGraph> select_keyframes(
    const std::vector<FrameSceneGraph>& frames, std::size_t k,
    std::uint64_t seed) {
  if (frames.empty()) throw ConfigError("select_keyframes: no frames");
  if (k < 1) throw ConfigError("select_keyframes: k must be >= 1");
  if (k >= frames.size()) return frames;

  std::vector<std::vector<double>> desc;
  desc.reserve(frames.size());
  for (const auto& f : frames) desc.push_back(detail::frame_descriptor(f));
  const std::size_t dim = desc.empty() ? 0 : desc[0].size();
  for (const auto& d : desc)
    if (d.size() != dim)
      throw DataError("select_keyframes: inconsistent feature dimensions");

  // farthest-point initialization
  Rng rng(seed);
  std::vector<std::size_t> centers;
  centers.push_back(rng.index(frames.size()));
  while (centers.size() < k) {
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < desc.size(); ++i) {
      double nearest = std::numeric_limits<double>::max();
      for (std::size_t c : centers)
        nearest = std::min(nearest, detail::sq_dist(desc[i], desc[c]));
      if (nearest > far_d) {
        far_d = nearest;
        far = i;
      }
    }
    centers.push_back(far);
  }
  std::vector<std::vector<double>> centroid;
  for (std::size_t c : centers) centroid.push_back(desc[c]);

  std::vector<std::size_t> assign(frames.size(), 0);
  for (int iter = 0; iter < 50; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < desc.size(); ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::max();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = detail::sq_dist(desc[i], centroid[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<double> m(dim, 0.0);
      std::size_t cnt = 0;
      for (std::size_t i = 0; i < desc.size(); ++i)
        if (assign[i] == c) {
          for (std::size_t j = 0; j < dim; ++j) m[j] += desc[i][j];
          ++cnt;
        }
      if (cnt > 0) {
        for (auto& x : m) x /= static_cast<double>(cnt);
        centroid[c] = std::move(m);
      }
    }
  }

  // nearest unused frame per centroid so the output always has k frames,
  // returned in temporal order
  std::vector<bool> used(frames.size(), false);
  std::vector<std::size_t> picked;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < desc.size(); ++i) {
      if (used[i]) continue;
      const double d = detail::sq_dist(desc[i], centroid[c]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    used[best] = true;
    picked.push_back(best);
  }
  std::sort(picked.begin(), picked.end());

  std::vector<FrameSceneGraph> out;
  for (std::size_t i : picked) out.push_back(frames[i]);
  return out;
}

}  // namespace hostsg
