#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hostsg/errors.hpp"
#include "hostsg/tensor.hpp"

namespace hostsg::nn {

// Reverse-mode tape. Every op appends a node whose backward closure
// accumulates exact analytic gradients into its parents. Node indices are a
// topological order by construction, so backward() is a single reverse sweep.
class Tape {
 public:
  using Ref = std::uint32_t;

  Ref leaf(Tensor t) { return push(std::move(t), {}, "leaf"); }

  Ref scalar(double x) { return leaf(Tensor::scalar(x)); }

  const Tensor& val(Ref r) const { return nodes_[r].val; }
  const Tensor& grad(Ref r) const { return nodes_[r].grad; }
  Tensor& grad(Ref r) { return nodes_[r].grad; }
  std::size_t node_count() const { return nodes_.size(); }

  void backward(Ref result) {
    if (nodes_[result].val.size() != 1)
      throw ShapeError("backward: result must be scalar");
    nodes_[result].grad.v[0] = 1.0;
    for (std::size_t i = result + 1; i-- > 0;) {
      if (nodes_[i].back) nodes_[i].back(*this);
    }
  }

  void zero_grad() {
    for (auto& n : nodes_) n.grad.v.assign(n.grad.v.size(), 0.0);
  }

  // ---- arithmetic ----

  Ref add(Ref a, Ref b) {
    require_same_shape(a, b, "add");
    Tensor out = val(a);
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] += val(b).at(i);
    return push(std::move(out), [a, b](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i) {
        t.nodes_[a].grad.v[i] += g.v[i];
        t.nodes_[b].grad.v[i] += g.v[i];
      }
    }, "add");
  }

  Ref sub(Ref a, Ref b) {
    require_same_shape(a, b, "sub");
    Tensor out = val(a);
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] -= val(b).at(i);
    return push(std::move(out), [a, b](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i) {
        t.nodes_[a].grad.v[i] += g.v[i];
        t.nodes_[b].grad.v[i] -= g.v[i];
      }
    }, "sub");
  }

  Ref mul(Ref a, Ref b) {
    require_same_shape(a, b, "mul");
    Tensor out = val(a);
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] *= val(b).at(i);
    return push(std::move(out), [a, b](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i) {
        t.nodes_[a].grad.v[i] += g.v[i] * t.val(b).at(i);
        t.nodes_[b].grad.v[i] += g.v[i] * t.val(a).at(i);
      }
    }, "mul");
  }

  Ref scale(Ref a, double c) {
    Tensor out = val(a);
    for (auto& x : out.v) x *= c;
    return push(std::move(out), [a, c](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i)
        t.nodes_[a].grad.v[i] += g.v[i] * c;
    }, "scale");
  }

  // a / s with scalar s
  Ref div_scalar(Ref a, Ref s) {
    if (val(s).size() != 1) throw ShapeError("div_scalar: divisor not scalar");
    const double d = val(s).item();
    if (d == 0.0) throw NumericError("div_scalar: division by zero");
    Tensor out = val(a);
    for (auto& x : out.v) x /= d;
    return push(std::move(out), [a, s](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      const double d = t.val(s).item();
      double ds = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        t.nodes_[a].grad.v[i] += g.v[i] / d;
        ds -= g.v[i] * t.val(a).at(i) / (d * d);
      }
      t.nodes_[s].grad.v[0] += ds;
    }, "div_scalar");
  }

  Ref dot(Ref a, Ref b) {
    require_same_shape(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < val(a).size(); ++i)
      s += val(a).at(i) * val(b).at(i);
    return push(Tensor::scalar(s), [a, b](Tape& t, Ref self) {
      const double g = t.nodes_[self].grad.v[0];
      for (std::size_t i = 0; i < t.val(a).size(); ++i) {
        t.nodes_[a].grad.v[i] += g * t.val(b).at(i);
        t.nodes_[b].grad.v[i] += g * t.val(a).at(i);
      }
    }, "dot");
  }

  Ref matmul(Ref a, Ref b) {
    const Tensor& A = val(a);
    const Tensor& B = val(b);
    if (A.rank() != 2 || B.rank() != 2 || A.shape[1] != B.shape[0])
      throw ShapeError("matmul: incompatible shapes " + A.shape_str() + " " +
                       B.shape_str());
    const std::size_t m = A.shape[0], k = A.shape[1], n = B.shape[1];
    Tensor out = Tensor::zeros({m, n});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < k; ++p) {
        const double aip = A.at(i, p);
        if (aip == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) += aip * B.at(p, j);
      }
    return push(std::move(out), [a, b, m, k, n](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      const Tensor& A = t.val(a);
      const Tensor& B = t.val(b);
      Tensor& dA = t.nodes_[a].grad;
      Tensor& dB = t.nodes_[b].grad;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double g = G.at(i, j);
          if (g == 0.0) continue;
          for (std::size_t p = 0; p < k; ++p) {
            dA.at(i, p) += g * B.at(p, j);
            dB.at(p, j) += g * A.at(i, p);
          }
        }
    }, "matmul");
  }

  // W (m x k) times x (k) -> (m)
  Ref matvec(Ref w, Ref x) {
    const Tensor& W = val(w);
    const Tensor& X = val(x);
    if (W.rank() != 2 || X.rank() != 1 || W.shape[1] != X.size())
      throw ShapeError("matvec: incompatible shapes " + W.shape_str() + " " +
                       X.shape_str());
    const std::size_t m = W.shape[0], k = W.shape[1];
    Tensor out = Tensor::zeros({m});
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += W.at(i, p) * X.at(p);
      out.v[i] = s;
    }
    return push(std::move(out), [w, x, m, k](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      const Tensor& W = t.val(w);
      const Tensor& X = t.val(x);
      Tensor& dW = t.nodes_[w].grad;
      Tensor& dX = t.nodes_[x].grad;
      for (std::size_t i = 0; i < m; ++i) {
        const double g = G.at(i);
        if (g == 0.0) continue;
        for (std::size_t p = 0; p < k; ++p) {
          dW.at(i, p) += g * X.at(p);
          dX.v[p] += g * W.at(i, p);
        }
      }
    }, "matvec");
  }

  // v (k) times M (k x d) -> (d)
  Ref vecmat(Ref v, Ref m) {
    const Tensor& V = val(v);
    const Tensor& M = val(m);
    if (V.rank() != 1 || M.rank() != 2 || V.size() != M.shape[0])
      throw ShapeError("vecmat: incompatible shapes " + V.shape_str() + " " +
                       M.shape_str());
    const std::size_t k = M.shape[0], d = M.shape[1];
    Tensor out = Tensor::zeros({d});
    for (std::size_t i = 0; i < k; ++i) {
      const double w = V.at(i);
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) out.v[j] += w * M.at(i, j);
    }
    return push(std::move(out), [v, m, k, d](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      const Tensor& V = t.val(v);
      const Tensor& M = t.val(m);
      for (std::size_t i = 0; i < k; ++i) {
        double dv = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          dv += G.v[j] * M.at(i, j);
          t.nodes_[m].grad.at(i, j) += G.v[j] * V.at(i);
        }
        t.nodes_[v].grad.v[i] += dv;
      }
    }, "vecmat");
  }

  // elementwise pick from a vector
  Ref gather(Ref v, std::vector<std::size_t> idx) {
    const Tensor& V = val(v);
    if (V.rank() != 1) throw ShapeError("gather: input not a vector");
    for (auto i : idx)
      if (i >= V.size()) throw ShapeError("gather: index out of range");
    Tensor out = Tensor::zeros({idx.size()});
    for (std::size_t r = 0; r < idx.size(); ++r) out.v[r] = V.at(idx[r]);
    return push(std::move(out), [v, idx = std::move(idx)](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      for (std::size_t r = 0; r < idx.size(); ++r)
        t.nodes_[v].grad.v[idx[r]] += G.v[r];
    }, "gather");
  }

  // broadcast add of a scalar ref
  Ref adds(Ref a, Ref s) {
    if (val(s).size() != 1) throw ShapeError("adds: addend not scalar");
    const double x = val(s).v[0];
    Tensor out = val(a);
    for (auto& y : out.v) y += x;
    return push(std::move(out), [a, s](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      double ds = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        t.nodes_[a].grad.v[i] += g.v[i];
        ds += g.v[i];
      }
      t.nodes_[s].grad.v[0] += ds;
    }, "adds");
  }

  // ---- shape ops ----

  Ref concat(const std::vector<Ref>& parts) {
    std::size_t n = 0;
    for (Ref r : parts) n += val(r).size();
    Tensor out = Tensor::zeros({n});
    std::size_t off = 0;
    for (Ref r : parts)
      for (double x : val(r).v) out.v[off++] = x;
    auto ps = parts;
    return push(std::move(out), [ps](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      std::size_t off = 0;
      for (Ref r : ps) {
        Tensor& d = t.nodes_[r].grad;
        for (std::size_t i = 0; i < d.size(); ++i) d.v[i] += G.v[off++];
      }
    }, "concat");
  }

  Ref stack_rows(const std::vector<Ref>& rows) {
    if (rows.empty()) throw ShapeError("stack_rows: empty row list");
    const std::size_t d = val(rows[0]).size();
    for (Ref r : rows)
      if (val(r).rank() != 1 || val(r).size() != d)
        throw ShapeError("stack_rows: rows must be 1-D with equal length");
    Tensor out = Tensor::zeros({rows.size(), d});
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) out.at(i, j) = val(rows[i]).at(j);
    auto rs = rows;
    return push(std::move(out), [rs, d](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < d; ++j)
          t.nodes_[rs[i]].grad.v[j] += G.at(i, j);
    }, "stack_rows");
  }

  Ref gather_rows(Ref m, std::vector<std::size_t> idx) {
    const Tensor& M = val(m);
    if (M.rank() != 2) throw ShapeError("gather_rows: input not a matrix");
    const std::size_t d = M.shape[1];
    for (auto i : idx)
      if (i >= M.shape[0]) throw ShapeError("gather_rows: index out of range");
    Tensor out = Tensor::zeros({idx.size(), d});
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t j = 0; j < d; ++j) out.at(r, j) = M.at(idx[r], j);
    return push(std::move(out), [m, idx = std::move(idx), d](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      Tensor& dM = t.nodes_[m].grad;
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t j = 0; j < d; ++j) dM.at(idx[r], j) += G.at(r, j);
    }, "gather_rows");
  }

  Ref row(Ref m, std::size_t i) {
    const Tensor& M = val(m);
    if (M.rank() != 2 || i >= M.shape[0])
      throw ShapeError("row: bad index or rank");
    const std::size_t d = M.shape[1];
    Tensor out = Tensor::zeros({d});
    for (std::size_t j = 0; j < d; ++j) out.v[j] = M.at(i, j);
    return push(std::move(out), [m, i, d](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      for (std::size_t j = 0; j < d; ++j)
        t.nodes_[m].grad.at(i, j) += G.v[j];
    }, "row");
  }

  // table (V x d) row lookup; the embedding primitive
  Ref embed(Ref table, std::size_t index) { return row(table, index); }

  // ---- elementwise nonlinearities ----

  Ref relu(Ref a) {
    Tensor out = val(a);
    for (auto& x : out.v) x = x > 0.0 ? x : 0.0;
    return push(std::move(out), [a](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (t.val(a).at(i) > 0.0) t.nodes_[a].grad.v[i] += g.v[i];
    }, "relu");
  }

  Ref leaky_relu(Ref a, double alpha = 0.2) {
    Tensor out = val(a);
    for (auto& x : out.v) x = x > 0.0 ? x : alpha * x;
    return push(std::move(out), [a, alpha](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i)
        t.nodes_[a].grad.v[i] +=
            g.v[i] * (t.val(a).at(i) > 0.0 ? 1.0 : alpha);
    }, "leaky_relu");
  }

  Ref tanh_(Ref a) {
    Tensor out = val(a);
    for (auto& x : out.v) x = std::tanh(x);
    return push(std::move(out), [a](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      const Tensor& y = t.val(self);
      for (std::size_t i = 0; i < g.size(); ++i)
        t.nodes_[a].grad.v[i] += g.v[i] * (1.0 - y.at(i) * y.at(i));
    }, "tanh");
  }

  Ref sigmoid(Ref a) {
    Tensor out = val(a);
    for (auto& x : out.v) x = 1.0 / (1.0 + std::exp(-x));
    return push(std::move(out), [a](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      const Tensor& y = t.val(self);
      for (std::size_t i = 0; i < g.size(); ++i)
        t.nodes_[a].grad.v[i] += g.v[i] * y.at(i) * (1.0 - y.at(i));
    }, "sigmoid");
  }

  Ref softplus(Ref a) {
    Tensor out = val(a);
    for (auto& x : out.v)
      x = x > 30.0 ? x : std::log1p(std::exp(x));
    return push(std::move(out), [a](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = t.val(a).at(i);
        t.nodes_[a].grad.v[i] += g.v[i] / (1.0 + std::exp(-x));
      }
    }, "softplus");
  }

  Ref exp_(Ref a) {
    Tensor out = val(a);
    for (auto& x : out.v) x = std::exp(x);
    return push(std::move(out), [a](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      const Tensor& y = t.val(self);
      for (std::size_t i = 0; i < g.size(); ++i)
        t.nodes_[a].grad.v[i] += g.v[i] * y.at(i);
    }, "exp");
  }

  Ref log_(Ref a) {
    Tensor out = val(a);
    for (auto& x : out.v) {
      if (x <= 0.0) throw NumericError("log: non-positive input");
      x = std::log(x);
    }
    return push(std::move(out), [a](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i)
        t.nodes_[a].grad.v[i] += g.v[i] / t.val(a).at(i);
    }, "log");
  }

  // ---- reductions ----

  Ref sum(Ref a) {
    double s = 0.0;
    for (double x : val(a).v) s += x;
    return push(Tensor::scalar(s), [a](Tape& t, Ref self) {
      const double g = t.nodes_[self].grad.v[0];
      for (auto& d : t.nodes_[a].grad.v) d += g;
    }, "sum");
  }

  Ref mean(Ref a) {
    const std::size_t n = val(a).size();
    if (n == 0) throw ShapeError("mean: empty tensor");
    double s = 0.0;
    for (double x : val(a).v) s += x;
    return push(Tensor::scalar(s / static_cast<double>(n)),
                [a, n](Tape& t, Ref self) {
      const double g = t.nodes_[self].grad.v[0] / static_cast<double>(n);
      for (auto& d : t.nodes_[a].grad.v) d += g;
    }, "mean");
  }

  // column-wise mean over rows of a matrix -> vector (mean pooling)
  Ref mean_rows(Ref m) {
    const Tensor& M = val(m);
    if (M.rank() != 2 || M.shape[0] == 0)
      throw ShapeError("mean_rows: need nonempty matrix");
    const std::size_t r = M.shape[0], d = M.shape[1];
    Tensor out = Tensor::zeros({d});
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j) out.v[j] += M.at(i, j);
    for (auto& x : out.v) x /= static_cast<double>(r);
    return push(std::move(out), [m, r, d](Tape& t, Ref self) {
      const Tensor& G = t.nodes_[self].grad;
      Tensor& dM = t.nodes_[m].grad;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < d; ++j)
          dM.at(i, j) += G.v[j] / static_cast<double>(r);
    }, "mean_rows");
  }

  // max element of a vector; subgradient routed to the first argmax
  Ref vmax(Ref a) {
    const Tensor& A = val(a);
    if (A.size() == 0) throw ShapeError("vmax: empty tensor");
    std::size_t best = 0;
    for (std::size_t i = 1; i < A.size(); ++i)
      if (A.at(i) > A.at(best)) best = i;
    return push(Tensor::scalar(A.at(best)), [a, best](Tape& t, Ref self) {
      t.nodes_[a].grad.v[best] += t.nodes_[self].grad.v[0];
    }, "vmax");
  }

  // ---- probability ops ----

  Ref softmax(Ref a) {
    const Tensor& A = val(a);
    if (A.rank() != 1 || A.size() == 0)
      throw ShapeError("softmax: need nonempty vector");
    Tensor out = A;
    double mx = out.v[0];
    for (double x : out.v) mx = std::max(mx, x);
    double z = 0.0;
    for (auto& x : out.v) {
      x = std::exp(x - mx);
      z += x;
    }
    for (auto& x : out.v) x /= z;
    return push(std::move(out), [a](Tape& t, Ref self) {
      const Tensor& y = t.val(self);
      const Tensor& G = t.nodes_[self].grad;
      double gy = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) gy += G.at(i) * y.at(i);
      for (std::size_t i = 0; i < y.size(); ++i)
        t.nodes_[a].grad.v[i] += y.at(i) * (G.at(i) - gy);
    }, "softmax");
  }

  // CE of softmax(logits) against an integer label: logsumexp(z) - z[y]
  Ref cross_entropy(Ref logits, std::size_t label) {
    const Tensor& Z = val(logits);
    if (Z.rank() != 1 || label >= Z.size())
      throw ShapeError("cross_entropy: bad logits shape or label");
    double mx = Z.v[0];
    for (double x : Z.v) mx = std::max(mx, x);
    double z = 0.0;
    for (double x : Z.v) z += std::exp(x - mx);
    const double loss = mx + std::log(z) - Z.at(label);
    return push(Tensor::scalar(loss), [logits, label, mx, z](Tape& t, Ref self) {
      const double g = t.nodes_[self].grad.v[0];
      const Tensor& Z = t.val(logits);
      for (std::size_t i = 0; i < Z.size(); ++i) {
        const double p = std::exp(Z.at(i) - mx) / z;
        t.nodes_[logits].grad.v[i] += g * (p - (i == label ? 1.0 : 0.0));
      }
    }, "cross_entropy");
  }

  // mu + sigma (.) eps, eps fixed; the reparameterization primitive
  Ref gaussian_sample(Ref mu, Ref sigma, Tensor eps) {
    require_same_shape(mu, sigma, "gaussian_sample");
    if (!val(mu).same_shape(eps))
      throw ShapeError("gaussian_sample: eps shape mismatch");
    Tensor out = val(mu);
    for (std::size_t i = 0; i < out.size(); ++i)
      out.v[i] += val(sigma).at(i) * eps.at(i);
    return push(std::move(out),
                [mu, sigma, eps = std::move(eps)](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i) {
        t.nodes_[mu].grad.v[i] += g.v[i];
        t.nodes_[sigma].grad.v[i] += g.v[i] * eps.at(i);
      }
    }, "gaussian_sample");
  }

  // KL(N(mu, sigma^2) || N(0, I)) = 1/2 sum(mu^2 + sigma^2 - 2 log sigma - 1)
  Ref kl_std_normal(Ref mu, Ref sigma) {
    require_same_shape(mu, sigma, "kl_std_normal");
    double s = 0.0;
    for (std::size_t i = 0; i < val(mu).size(); ++i) {
      const double m = val(mu).at(i), sd = val(sigma).at(i);
      if (sd <= 0.0) throw NumericError("kl_std_normal: sigma must be > 0");
      s += 0.5 * (m * m + sd * sd - 2.0 * std::log(sd) - 1.0);
    }
    return push(Tensor::scalar(s), [mu, sigma](Tape& t, Ref self) {
      const double g = t.nodes_[self].grad.v[0];
      for (std::size_t i = 0; i < t.val(mu).size(); ++i) {
        const double m = t.val(mu).at(i), sd = t.val(sigma).at(i);
        t.nodes_[mu].grad.v[i] += g * m;
        t.nodes_[sigma].grad.v[i] += g * (sd - 1.0 / sd);
      }
    }, "kl_std_normal");
  }

  // elementwise multiply by a fixed mask (dropout with a precomputed mask)
  Ref apply_mask(Ref a, Tensor mask) {
    if (!val(a).same_shape(mask))
      throw ShapeError("apply_mask: mask shape mismatch");
    Tensor out = val(a);
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] *= mask.at(i);
    return push(std::move(out), [a, mask = std::move(mask)](Tape& t, Ref self) {
      auto& g = t.nodes_[self].grad;
      for (std::size_t i = 0; i < g.size(); ++i)
        t.nodes_[a].grad.v[i] += g.v[i] * mask.at(i);
    }, "apply_mask");
  }

 private:
  struct Node {
    Tensor val;
    Tensor grad;
    std::function<void(Tape&)> back;
  };

  std::vector<Node> nodes_;

  void require_same_shape(Ref a, Ref b, const char* op) const {
    if (!val(a).same_shape(val(b)))
      throw ShapeError(std::string(op) + ": shape mismatch " +
                       val(a).shape_str() + " vs " + val(b).shape_str());
  }

  Ref push(Tensor v, std::function<void(Tape&, Ref)> back, const char* op) {
    if (!v.all_finite())
      throw NumericError(std::string(op) + ": non-finite output");
    Node n;
    n.grad = Tensor::zeros(v.shape);
    n.val = std::move(v);
    const Ref id = static_cast<Ref>(nodes_.size());
    if (back)
      n.back = [back = std::move(back), id](Tape& t) { back(t, id); };
    nodes_.push_back(std::move(n));
    return id;
  }
};

}  // namespace hostsg::nn
