#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hostsg/errors.hpp"
#include "hostsg/metrics.hpp"
#include "hostsg/model.hpp"
#include "hostsg/params.hpp"
#include "hostsg/rng.hpp"

namespace hostsg::nn {

class Adam {
 public:
  explicit Adam(double lr = 1e-4, double b1 = 0.9, double b2 = 0.999,
                double eps = 1e-8)
      : lr_(lr), b1_(b1), b2_(b2), eps_(eps) {}

  void set_lr(double lr) { lr_ = lr; }

  void step(ParamStore& ps) {
    ++t_;
    const double c1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
    ps.for_each([&](const std::string& k, Tensor& v, Tensor& g) {
      auto& [m, s] = state_[k];
      m.resize(g.size(), 0.0);
      s.resize(g.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g.v[i]))
          throw NumericError("Adam: non-finite gradient for " + k);
        m[i] = b1_ * m[i] + (1.0 - b1_) * g.v[i];
        s[i] = b2_ * s[i] + (1.0 - b2_) * g.v[i] * g.v[i];
        v.v[i] -= lr_ * (m[i] / c1) / (std::sqrt(s[i] / c2) + eps_);
      }
    });
  }

  std::size_t steps() const { return t_; }

 private:
  double lr_, b1_, b2_, eps_;
  std::size_t t_ = 0;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>
      state_;
};

struct TrainConfig {
  double lr = 1e-4;
  double lr_final_frac = 0.05;  // linear decay target as a fraction of lr
  std::size_t batch = 4;
  std::size_t epochs = 20;
  std::uint64_t seed = 7;
  std::ostream* log = nullptr;    // JSON lines, one record per event
  std::ostream* trace = nullptr;  // JSON lines, edge refinement events
};

struct TrainResult {
  std::vector<double> epoch_loss;
  // mean absolute change of each sample's final edge weights (measured with
  // a deterministic forward pass at the end of the epoch) versus the
  // previous epoch; one entry per epoch from the second epoch on
  std::vector<double> fluctuation;
};

struct EvalResult {
  double verb_acc1 = 0.0;
  double verb_acc5 = 0.0;
  double verb_rec5 = 0.0;
  double rel_macro_acc = 0.0;
  double rouge = 0.0;  // mean LCS F over the real (non-modifier) roles
  std::size_t samples = 0;
};

inline std::vector<double> final_edge_weights(Tape& t, const ModelOutput& o) {
  std::vector<double> w;
  w.reserve(o.weights.size());
  for (const auto& r : o.weights)
    w.push_back(r ? t.val(*r).item() : 1.0);
  return w;
}

inline TrainResult train_model(ParamStore& ps, const ModelConfig& mcfg,
                               const Vocab& vocab,
                               const std::vector<SyntheticSample>& samples,
                               const std::vector<IceGraph>& graphs,
                               const TrainConfig& tcfg) {
  if (samples.size() != graphs.size())
    throw DataError("train_model: sample/graph count mismatch");
  if (samples.empty()) throw DataError("train_model: no training samples");
  if (tcfg.batch == 0) throw ConfigError("train_model: batch must be >= 1");

  Adam opt(tcfg.lr);
  Rng shuffle_rng = Rng::derive(tcfg.seed, "shuffle");
  Rng model_rng = Rng::derive(tcfg.seed, "model");
  TrainResult result;
  std::vector<std::vector<double>> prev_weights(samples.size());

  for (std::size_t epoch = 0; epoch < tcfg.epochs; ++epoch) {
    const double frac =
        tcfg.epochs > 1
            ? static_cast<double>(epoch) / static_cast<double>(tcfg.epochs - 1)
            : 0.0;
    opt.set_lr(tcfg.lr * (1.0 + (tcfg.lr_final_frac - 1.0) * frac));
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[shuffle_rng.index(i)]);

    double epoch_loss = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < order.size(); start += tcfg.batch) {
      const std::size_t end = std::min(order.size(), start + tcfg.batch);
      ps.zero_grads();
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t idx = order[k];
        Session s(ps);
        ModelOutput out =
            model_forward(s, mcfg, vocab, graphs[idx], true, model_rng);
        LossBreakdown lb;
        const Tape::Ref loss = model_loss(s, mcfg, vocab, graphs[idx],
                                          samples[idx].gold, out, model_rng,
                                          &lb);
        s.backward(loss);
        epoch_loss += lb.total;
        ++seen;

        if (tcfg.trace && !out.refine_trace.empty()) {
          // one record per refinement step and edge type: mean weight,
          // mean absolute change, and how many edges were cut
          std::size_t n_adj = 0;
          for (const auto& e : graphs[idx].edges)
            if (e.adjustable()) ++n_adj;
          struct Agg {
            double w = 0.0, dw = 0.0;
            std::size_t cut = 0, n = 0;
          };
          std::map<std::pair<std::size_t, EdgeKind>, Agg> agg;
          for (std::size_t k = 0; k < out.refine_trace.size(); ++k) {
            const auto& ev = out.refine_trace[k];
            const std::size_t step = n_adj == 0 ? 0 : k / n_adj;
            Agg& a = agg[{step, graphs[idx].edges[ev.edge].kind}];
            a.w += ev.after;
            a.dw += std::abs(ev.after - ev.before);
            a.cut += ev.cut ? 1 : 0;
            ++a.n;
          }
          for (const auto& [key, a] : agg) {
            nlohmann::json j{{"epoch", epoch},
                             {"sample", idx},
                             {"step", key.first},
                             {"edge_kind", to_string(key.second)},
                             {"mean_weight", a.w / static_cast<double>(a.n)},
                             {"mean_abs_change",
                              a.dw / static_cast<double>(a.n)},
                             {"cut_count", a.cut}};
            (*tcfg.trace) << j.dump() << "\n";
          }
        }
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      ps.for_each([&](const std::string&, Tensor&, Tensor& g) {
        for (auto& x : g.v) x *= inv;
      });
      opt.step(ps);
    }

    // deterministic end-of-epoch snapshot of each sample's final weights
    double fluct = 0.0;
    std::size_t fluct_n = 0;
    Rng snap_rng(0);
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
      Session s(ps);
      ModelOutput out =
          model_forward(s, mcfg, vocab, graphs[idx], false, snap_rng);
      const std::vector<double> w = final_edge_weights(s.tape(), out);
      if (prev_weights[idx].size() == w.size()) {
        double d = 0.0;
        for (std::size_t e = 0; e < w.size(); ++e)
          d += std::abs(w[e] - prev_weights[idx][e]);
        fluct += d / static_cast<double>(w.size());
        ++fluct_n;
      }
      prev_weights[idx] = w;
    }
    if (fluct_n > 0)
      result.fluctuation.push_back(fluct / static_cast<double>(fluct_n));

    epoch_loss /= static_cast<double>(seen);
    result.epoch_loss.push_back(epoch_loss);
    if (tcfg.log) {
      nlohmann::json j{{"event", "epoch"},
                       {"epoch", epoch},
                       {"loss", epoch_loss},
                       {"steps", opt.steps()}};
      (*tcfg.log) << j.dump() << "\n";
    }
  }
  return result;
}

inline EvalResult evaluate(ParamStore& ps, const ModelConfig& mcfg,
                           const Vocab& vocab,
                           const std::vector<SyntheticSample>& samples,
                           const std::vector<IceGraph>& graphs) {
  if (samples.size() != graphs.size())
    throw DataError("evaluate: sample/graph count mismatch");
  EvalResult r;
  Rng rng(0);
  std::vector<std::vector<std::size_t>> rankings;
  std::vector<int> gold_verbs;
  std::map<std::pair<std::size_t, std::pair<int, int>>, int> pred_rel,
      gold_rel;
  double rouge_sum = 0.0;
  std::size_t rouge_n = 0;
  const auto& roles = default_roles();

  for (std::size_t i = 0; i < samples.size(); ++i) {
    Session s(ps);
    ModelOutput out = model_forward(s, mcfg, vocab, graphs[i], false, rng);
    const Prediction p = predict(s, mcfg, vocab, graphs[i], out);
    const GoldAnnotations& gold = samples[i].gold;
    if (!gold.present) throw DataError("evaluate: sample has no annotations");

    for (std::size_t c = 0; c < graphs[i].n_clips; ++c) {
      rankings.push_back(p.verb_ranking[c]);
      gold_verbs.push_back(gold.verbs[c]);
    }
    for (const auto& [pair, y] : gold.relations) {
      gold_rel[{i, pair}] = y;
      auto it = p.relations.find(pair);
      if (it != p.relations.end()) pred_rel[{i, pair}] = it->second;
    }
    for (std::size_t c = 0; c < graphs[i].n_clips; ++c)
      for (std::size_t role = 0; role < kRealRoles; ++role) {
        const auto& clip_args = gold.args[c];
        auto it = clip_args.find(roles[role]);
        const std::vector<int> ref =
            it == clip_args.end() ? std::vector<int>{} : it->second;
        rouge_sum += rouge_l(p.role_texts[c][role], ref);
        ++rouge_n;
      }
  }
  r.samples = samples.size();
  r.verb_acc1 = acc_at_k(rankings, gold_verbs, 1);
  r.verb_acc5 = acc_at_k(rankings, gold_verbs, 5);
  r.verb_rec5 = macro_recall_at_k(rankings, gold_verbs, 5);
  r.rel_macro_acc = macro_accuracy(pred_rel, gold_rel);
  r.rouge = rouge_n == 0 ? 0.0 : rouge_sum / static_cast<double>(rouge_n);
  return r;
}

// mean of the first and last tenth of the fluctuation series
inline std::pair<double, double> fluctuation_deciles(
    const std::vector<double>& series) {
  if (series.empty()) return {0.0, 0.0};
  const std::size_t n = std::max<std::size_t>(1, series.size() / 10);
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < n; ++i) a += series[i];
  for (std::size_t i = series.size() - n; i < series.size(); ++i)
    b += series[i];
  return {a / static_cast<double>(n), b / static_cast<double>(n)};
}

}  // namespace hostsg::nn
