#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hostsg/errors.hpp"
#include "hostsg/ice.hpp"
#include "hostsg/params.hpp"
#include "hostsg/rng.hpp"
#include "hostsg/tape.hpp"

namespace hostsg::nn {

struct RefineConfig {
  double p_cut = 0.1;       // edges below this after renormalization drop to 0
  std::size_t rounds = 2;   // refinement passes per forward
  double beta = 1.0;        // information-bottleneck KL weight
};

// Differentiable weight handles for the adjustable edges; fixed
// predicate-argument edges carry no handle and are never rescaled.
inline std::vector<std::optional<Tape::Ref>> init_edge_weights(
    Tape& t, const IceGraph& ice) {
  std::vector<std::optional<Tape::Ref>> w(ice.edges.size());
  for (std::size_t e = 0; e < ice.edges.size(); ++e)
    if (ice.edges[e].adjustable())
      w[e] = t.leaf(Tensor::scalar(ice.edges[e].weight));
  return w;
}

struct RefineEvent {
  std::size_t edge = 0;
  double before = 0.0;
  double after = 0.0;
  bool cut = false;
};

// One refinement pass. Per source node a: candidate attention
// phi = softmax_b(u.h_a + w.h_b) over all nodes; per outgoing adjustable
// edge a keep score r in (0,1) from a two-logit FFN on [h_a; h_b; phi_ab];
// raw = r * current weight, renormalized by the source's max raw weight so
// the strongest incident edge sits at 1. Renormalized weights below p_cut
// are detached to exactly 0, as are coreference edges whose endpoint tags
// differ.
inline std::vector<std::optional<Tape::Ref>> refine_edges(
    Session& s, const std::string& prefix, Tape::Ref states,
    const IceGraph& ice, const std::vector<std::optional<Tape::Ref>>& weights,
    double p_cut, std::vector<RefineEvent>* trace = nullptr) {
  Tape& t = s.tape();
  const Tensor& X = t.val(states);
  if (X.rank() != 2 || X.shape[0] != ice.node_count())
    throw ShapeError("refine_edges: states do not match graph");
  if (weights.size() != ice.edges.size())
    throw ShapeError("refine_edges: weight list does not match edge list");
  const std::size_t d = X.shape[1];

  std::vector<std::optional<Tape::Ref>> out = weights;
  auto record = [&](std::size_t e, double before, double after, bool cut) {
    if (trace) trace->push_back({e, before, after, cut});
  };

  // group live adjustable edges by source node
  std::map<std::size_t, std::vector<std::size_t>> by_src;
  for (std::size_t e = 0; e < ice.edges.size(); ++e) {
    if (!weights[e]) continue;
    const double w = t.val(*weights[e]).item();
    if (w <= 0.0) continue;
    const IceEdge& edge = ice.edges[e];
    if (edge.kind == EdgeKind::Coref &&
        ice.nodes[edge.src].tag != ice.nodes[edge.dst].tag) {
      out[e] = t.leaf(Tensor::scalar(0.0));
      record(e, w, 0.0, true);
      continue;
    }
    by_src[edge.src].push_back(e);
  }

  const Tape::Ref u = s.param(prefix + ".u", {d});
  const Tape::Ref wv = s.param(prefix + ".w", {d});
  const Tape::Ref W1 = s.param(prefix + ".ffn.W1", {d, 2 * d + 1});
  const Tape::Ref b1 = s.param(prefix + ".ffn.b1", {d});
  const Tape::Ref W2 = s.param(prefix + ".ffn.W2", {2, d});
  const Tape::Ref b2 = s.param(prefix + ".ffn.b2", {2});
  const Tape::Ref keep_pick = t.leaf(Tensor::vec({1.0, 0.0}));
  const Tape::Ref hw = t.matvec(states, wv);  // (n) candidate-side scores

  for (const auto& [a, group] : by_src) {
    const Tape::Ref ha = t.row(states, a);
    const Tape::Ref phi = t.softmax(t.adds(hw, t.dot(u, ha)));
    std::vector<Tape::Ref> raws;
    raws.reserve(group.size());
    for (std::size_t e : group) {
      const std::size_t b = ice.edges[e].dst;
      const Tape::Ref hb = t.row(states, b);
      const Tape::Ref in = t.concat({ha, hb, t.gather(phi, {b})});
      const Tape::Ref hid = t.relu(t.add(t.matvec(W1, in), b1));
      const Tape::Ref r =
          t.dot(t.softmax(t.add(t.matvec(W2, hid), b2)), keep_pick);
      raws.push_back(t.mul(r, *weights[e]));
    }
    const Tape::Ref mx = t.vmax(t.concat(raws));
    for (std::size_t k = 0; k < group.size(); ++k) {
      const std::size_t e = group[k];
      const double before = t.val(*weights[e]).item();
      const Tape::Ref ep = t.div_scalar(raws[k], mx);
      const double v = t.val(ep).item();
      if (v < p_cut) {
        out[e] = t.leaf(Tensor::scalar(0.0));
        record(e, before, 0.0, true);
      } else {
        out[e] = ep;
        record(e, before, v, false);
      }
    }
  }
  return out;
}

// Variational assistant loss over the final node states: per predicate (and
// per gold clip pair) a Gaussian posterior q(z|a) is sampled by
// reparameterization and a dedicated classifier is trained on z, with a
// KL(q || N(0, I)) penalty weighted by beta. Returns the mean over terms.
inline Tape::Ref gib_loss(Session& s, const std::string& prefix,
                          Tape::Ref states, const IceGraph& ice,
                          const std::vector<int>& gold_verbs,
                          const std::map<std::pair<int, int>, int>& gold_rels,
                          std::size_t verb_classes, std::size_t rel_classes,
                          double beta, Rng& rng) {
  Tape& t = s.tape();
  const std::size_t d = t.val(states).shape[1];
  if (gold_verbs.size() != ice.n_clips)
    throw ShapeError("gib_loss: need one gold verb per clip");
  const Tape::Ref g = t.mean_rows(states);

  auto branch = [&](const std::string& bp, Tape::Ref a, std::size_t classes,
                    std::size_t label) {
    const std::size_t ad = t.val(a).size();
    const Tape::Ref mu =
        t.add(t.matvec(s.param(bp + ".Wmu", {d, ad}), a), s.param(bp + ".bmu", {d}));
    const Tape::Ref sigma = t.adds(
        t.softplus(t.add(t.matvec(s.param(bp + ".Wsig", {d, ad}), a),
                         s.param(bp + ".bsig", {d}))),
        t.scalar(1e-6));
    const Tape::Ref z =
        t.gaussian_sample(mu, sigma, Tensor::vec(rng.normal_vec(d)));
    const Tape::Ref logits = t.add(
        t.matvec(s.param(bp + ".Wcls", {classes, d}), z),
        s.param(bp + ".bcls", {classes}));
    return t.add(t.cross_entropy(logits, label),
                 t.scale(t.kl_std_normal(mu, sigma), beta));
  };

  std::vector<Tape::Ref> terms;
  for (std::size_t c = 0; c < ice.n_clips; ++c) {
    const int y = gold_verbs[c];
    if (y < 0 || static_cast<std::size_t>(y) >= verb_classes)
      throw DataError("gib_loss: verb label out of range");
    const Tape::Ref hp = t.row(states, ice.predicate_index(c));
    terms.push_back(branch(prefix + ".verb", t.concat({g, hp}), verb_classes,
                           static_cast<std::size_t>(y)));
  }
  for (const auto& [pair, y] : gold_rels) {
    if (y < 0 || static_cast<std::size_t>(y) >= rel_classes)
      throw DataError("gib_loss: relation label out of range");
    const auto [i, j] = pair;
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= ice.n_clips ||
        static_cast<std::size_t>(j) >= ice.n_clips)
      throw DataError("gib_loss: relation pair out of range");
    const Tape::Ref hi =
        t.row(states, ice.predicate_index(static_cast<std::size_t>(i)));
    const Tape::Ref hj =
        t.row(states, ice.predicate_index(static_cast<std::size_t>(j)));
    terms.push_back(branch(prefix + ".rel", t.concat({g, hi, hj}), rel_classes,
                           static_cast<std::size_t>(y)));
  }
  return t.mean(t.concat(terms));
}

}  // namespace hostsg::nn
