#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "hostsg/params.hpp"
#include "hostsg/rng.hpp"
#include "hostsg/tape.hpp"
#include "hostsg/tensor.hpp"

namespace hostsg::nn {

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::size_t worst_input = 0;
  std::size_t worst_coord = 0;

  bool ok(double tolerance) const { return max_rel_error <= tolerance; }
};

// Scalar-valued tensor program evaluated at a point: given a fresh tape and
// leaf refs for each input, return the scalar result ref.
using TensorProgram =
    std::function<Tape::Ref(Tape&, const std::vector<Tape::Ref>&)>;

// Compares analytic gradients against central finite differences,
// independently of any implementation path being checked.
inline GradCheckReport grad_check(const TensorProgram& fn,
                                  std::vector<Tensor> point,
                                  double step = 1e-4) {
  GradCheckReport rep;

  auto eval = [&](const std::vector<Tensor>& pt, std::vector<Tensor>* grads) {
    Tape tape;
    std::vector<Tape::Ref> refs;
    refs.reserve(pt.size());
    for (const auto& t : pt) refs.push_back(tape.leaf(t));
    const Tape::Ref out = fn(tape, refs);
    if (tape.val(out).size() != 1)
      throw ShapeError("grad_check: program is not scalar-valued");
    const double y = tape.val(out).item();
    if (grads) {
      tape.backward(out);
      grads->clear();
      for (auto r : refs) grads->push_back(tape.grad(r));
    }
    return y;
  };

  std::vector<Tensor> analytic;
  eval(point, &analytic);

  for (std::size_t i = 0; i < point.size(); ++i) {
    for (std::size_t c = 0; c < point[i].size(); ++c) {
      const double saved = point[i].v[c];
      point[i].v[c] = saved + step;
      const double yp = eval(point, nullptr);
      point[i].v[c] = saved - step;
      const double ym = eval(point, nullptr);
      point[i].v[c] = saved;
      const double numeric = (yp - ym) / (2.0 * step);
      const double a = analytic[i].at(c);
      const double denom = std::max({1.0, std::abs(a), std::abs(numeric)});
      const double rel = std::abs(a - numeric) / denom;
      ++rep.checked;
      if (rel > rep.max_rel_error) {
        rep.max_rel_error = rel;
        rep.worst_input = i;
        rep.worst_coord = c;
      }
    }
  }
  return rep;
}

// Checks d(loss)/d(params) for a program whose parameters live in a
// ParamStore. Coordinates may be subsampled (max_coords > 0) to keep large
// models tractable; selection is deterministic per coord_seed.
inline GradCheckReport grad_check_params(
    const std::function<Tape::Ref(Session&)>& fn, ParamStore& store,
    double step = 1e-4, std::size_t max_coords = 0,
    std::uint64_t coord_seed = 17) {
  GradCheckReport rep;

  auto forward = [&]() {
    Session s(store);
    return s.tape().val(fn(s)).item();
  };

  store.zero_grads();
  {
    Session s(store);
    const Tape::Ref out = fn(s);
    if (s.tape().val(out).size() != 1)
      throw ShapeError("grad_check_params: program is not scalar-valued");
    s.backward(out);
  }

  std::vector<std::pair<std::string, std::size_t>> coords;
  store.for_each([&](const std::string& name, Tensor& v, Tensor&) {
    for (std::size_t c = 0; c < v.size(); ++c) coords.emplace_back(name, c);
  });
  if (max_coords > 0 && coords.size() > max_coords) {
    Rng rng(coord_seed);
    for (std::size_t i = 0; i < max_coords; ++i) {
      const std::size_t j = i + rng.index(coords.size() - i);
      std::swap(coords[i], coords[j]);
    }
    coords.resize(max_coords);
  }

  for (const auto& [name, c] : coords) {
    double& x = store.value(name).v[c];
    const double saved = x;
    x = saved + step;
    const double yp = forward();
    x = saved - step;
    const double ym = forward();
    x = saved;
    const double numeric = (yp - ym) / (2.0 * step);
    const double a = store.grad(name).at(c);
    const double denom = std::max({1.0, std::abs(a), std::abs(numeric)});
    const double rel = std::abs(a - numeric) / denom;
    ++rep.checked;
    rep.max_rel_error = std::max(rep.max_rel_error, rel);
  }
  return rep;
}

}  // namespace hostsg::nn
