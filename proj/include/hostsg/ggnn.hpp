#pragma once

#include <string>
#include <vector>

#include "hostsg/errors.hpp"
#include "hostsg/params.hpp"
#include "hostsg/tape.hpp"

namespace hostsg::nn {

// One GRU-style gated update: h' = (1-z).h + z.c with
// z = sigmoid(Wz m + Uz h + bz), r = sigmoid(Wr m + Ur h + br),
// c = tanh(Wh m + Uh (r.h) + bh). m is the aggregated incoming message.
inline Tape::Ref gru_cell(Session& s, const std::string& prefix, Tape::Ref h,
                          Tape::Ref m) {
  Tape& t = s.tape();
  const std::size_t d = t.val(h).size();
  if (t.val(m).size() != d) throw ShapeError("gru_cell: message dim mismatch");
  auto lin = [&](const char* gate, Tape::Ref x, Tape::Ref y) {
    const Tape::Ref Wx = s.param(prefix + ".W" + gate, {d, d});
    const Tape::Ref Wy = s.param(prefix + ".U" + gate, {d, d});
    const Tape::Ref b = s.param(prefix + ".b" + gate, {d});
    return t.add(t.add(t.matvec(Wx, x), t.matvec(Wy, y)), b);
  };
  const Tape::Ref z = t.sigmoid(lin("z", m, h));
  const Tape::Ref r = t.sigmoid(lin("r", m, h));
  const Tape::Ref c = t.tanh_(t.add(
      t.add(t.matvec(s.param(prefix + ".Wh", {d, d}), m),
            t.matvec(s.param(prefix + ".Uh", {d, d}), t.mul(r, h))),
      s.param(prefix + ".bh", {d})));
  // (1-z).h + z.c = h + z.(c - h)
  return t.add(h, t.mul(z, t.sub(c, h)));
}

// Sequential event-evolution propagation: predicate states are updated in
// temporal order, each receiving the mean of a learned projection of all
// *already updated* earlier states. The first state sees a zero message, so
// every output depends only on inputs at the same or earlier positions.
inline std::vector<Tape::Ref> ggnn_evolve(Session& s, const std::string& prefix,
                                          const std::vector<Tape::Ref>& preds) {
  if (preds.empty()) throw ShapeError("ggnn_evolve: no predicate states");
  Tape& t = s.tape();
  const std::size_t d = t.val(preds[0]).size();
  const Tape::Ref Wm = s.param(prefix + ".Wm", {d, d});
  std::vector<Tape::Ref> out;
  out.reserve(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    Tape::Ref msg;
    if (i == 0) {
      msg = t.leaf(Tensor::zeros({d}));
    } else {
      Tape::Ref acc = t.matvec(Wm, out[0]);
      for (std::size_t j = 1; j < i; ++j)
        acc = t.add(acc, t.matvec(Wm, out[j]));
      msg = t.scale(acc, 1.0 / static_cast<double>(i));
    }
    out.push_back(gru_cell(s, prefix + ".cell", preds[i], msg));
  }
  return out;
}

}  // namespace hostsg::nn
