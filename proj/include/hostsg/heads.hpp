#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hostsg/errors.hpp"
#include "hostsg/params.hpp"
#include "hostsg/tape.hpp"

namespace hostsg::nn {

inline Tape::Ref linear(Session& s, const std::string& prefix, Tape::Ref x,
                        std::size_t out_dim) {
  Tape& t = s.tape();
  const std::size_t in_dim = t.val(x).size();
  return t.add(t.matvec(s.param(prefix + ".W", {out_dim, in_dim}), x),
               s.param(prefix + ".b", {out_dim}));
}

inline Tape::Ref verb_logits(Session& s, const std::string& prefix,
                             Tape::Ref pred_state, std::size_t classes) {
  return linear(s, prefix, pred_state, classes);
}

inline Tape::Ref relation_logits(Session& s, const std::string& prefix,
                                 Tape::Ref pred_i, Tape::Ref pred_j,
                                 std::size_t classes) {
  return linear(s, prefix, s.tape().concat({pred_i, pred_j}), classes);
}

// Top-k class indices by logit, ties broken toward the smaller index.
inline std::vector<std::size_t> top_k_classes(const Tensor& logits,
                                              std::size_t k) {
  std::vector<std::size_t> idx(logits.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return logits.at(a) > logits.at(b);
  });
  idx.resize(std::min(k, idx.size()));
  return idx;
}

// ---- per-role text decoder ----
//
// Single attention layer, causal by construction: the state at position t
// attends over the event memory rows plus the input embeddings of positions
// 0..t only. Position 0 is the role's node state; later positions embed the
// previous token.

inline constexpr int kPadToken = 0;
inline constexpr int kEosToken = 1;

struct DecoderConfig {
  std::size_t max_len = 80;
  std::size_t beam = 5;
};

// One step: attention query from x over rows = [memory; prefix inputs],
// logits over the token vocabulary.
inline Tape::Ref decoder_step(Session& s, const std::string& prefix,
                              Tape::Ref x, const std::vector<Tape::Ref>& rows,
                              std::size_t vocab) {
  Tape& t = s.tape();
  const std::size_t d = t.val(x).size();
  const Tape::Ref R = t.stack_rows(rows);
  const Tape::Ref K = t.matmul(R, s.param(prefix + ".Wk", {d, d}));
  const Tape::Ref V = t.matmul(R, s.param(prefix + ".Wv", {d, d}));
  const Tape::Ref q = t.matvec(s.param(prefix + ".Wq", {d, d}), x);
  const Tape::Ref att =
      t.softmax(t.scale(t.matvec(K, q), 1.0 / std::sqrt(double(d))));
  const Tape::Ref ctx = t.vecmat(att, V);
  const Tape::Ref hid = t.tanh_(
      t.add(t.add(t.matvec(s.param(prefix + ".Wx", {d, d}), x),
                  t.matvec(s.param(prefix + ".Wc", {d, d}), ctx)),
            s.param(prefix + ".bh", {d})));
  return linear(s, prefix + ".out", hid, vocab);
}

inline Tape::Ref token_embedding(Session& s, const std::string& prefix,
                                 int token, std::size_t vocab, std::size_t d) {
  if (token < 0 || static_cast<std::size_t>(token) >= vocab)
    throw DataError("token_embedding: token out of range");
  return s.tape().embed(s.param(prefix + ".tok", {vocab, d}),
                        static_cast<std::size_t>(token));
}

// Teacher-forced loss for one role: targets are the gold tokens followed by
// <eos>; pad targets contribute nothing. Returns the summed token CE and the
// number of scored positions via `count`.
inline Tape::Ref role_text_loss(Session& s, const std::string& prefix,
                                Tape::Ref role_state,
                                const std::vector<Tape::Ref>& memory,
                                const std::vector<int>& gold_tokens,
                                std::size_t vocab, std::size_t* count) {
  Tape& t = s.tape();
  const std::size_t d = t.val(role_state).size();
  std::vector<int> targets = gold_tokens;
  targets.push_back(kEosToken);

  std::vector<Tape::Ref> rows = memory;
  Tape::Ref x = role_state;
  rows.push_back(x);
  std::vector<Tape::Ref> losses;
  for (int y : targets) {
    if (y == kPadToken) continue;
    const Tape::Ref logits = decoder_step(s, prefix, x, rows, vocab);
    losses.push_back(t.cross_entropy(logits, static_cast<std::size_t>(y)));
    x = token_embedding(s, prefix, y, vocab, d);
    rows.push_back(x);
  }
  if (count) *count = losses.size();
  if (losses.empty()) return t.scalar(0.0);
  Tape::Ref total = losses[0];
  for (std::size_t i = 1; i < losses.size(); ++i)
    total = t.add(total, losses[i]);
  return total;
}

// Beam search (beam = 1 is greedy). Scores are summed log-probabilities;
// exact ties prefer the lexicographically smaller token sequence. <eos> is
// stripped from the returned sequence.
inline std::vector<int> decode_role(Session& s, const std::string& prefix,
                                    Tape::Ref role_state,
                                    const std::vector<Tape::Ref>& memory,
                                    std::size_t vocab,
                                    const DecoderConfig& cfg) {
  Tape& t = s.tape();
  const std::size_t d = t.val(role_state).size();
  if (cfg.beam == 0) throw ConfigError("decode_role: beam must be >= 1");

  struct Hyp {
    std::vector<int> tokens;
    double score = 0.0;
    Tape::Ref x;
    std::vector<Tape::Ref> rows;
    bool done = false;
  };
  auto better = [](const Hyp& a, const Hyp& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.tokens < b.tokens;
  };

  Hyp init;
  init.x = role_state;
  init.rows = memory;
  init.rows.push_back(role_state);
  std::vector<Hyp> beam{init};

  for (std::size_t step = 0; step < cfg.max_len; ++step) {
    std::vector<Hyp> next;
    bool expanded = false;
    for (const Hyp& h : beam) {
      if (h.done) {
        next.push_back(h);
        continue;
      }
      expanded = true;
      const Tape::Ref logits = decoder_step(s, prefix, h.x, h.rows, vocab);
      const Tensor lp = t.val(t.softmax(logits));
      std::vector<std::size_t> order(vocab);
      for (std::size_t i = 0; i < vocab; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return lp.at(a) > lp.at(b);
                       });
      for (std::size_t r = 0; r < std::min(cfg.beam, vocab); ++r) {
        const int tok = static_cast<int>(order[r]);
        Hyp h2 = h;
        h2.score += std::log(std::max(lp.at(order[r]), 1e-300));
        if (tok == kEosToken || tok == kPadToken) {
          h2.done = true;
        } else {
          h2.tokens.push_back(tok);
          h2.x = token_embedding(s, prefix, tok, vocab, d);
          h2.rows.push_back(h2.x);
        }
        next.push_back(std::move(h2));
      }
    }
    std::stable_sort(next.begin(), next.end(), better);
    if (next.size() > cfg.beam) next.resize(cfg.beam);
    beam = std::move(next);
    if (!expanded) break;
  }
  std::stable_sort(beam.begin(), beam.end(), better);
  return beam.front().tokens;
}

}  // namespace hostsg::nn
