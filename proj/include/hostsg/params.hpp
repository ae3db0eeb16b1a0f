#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hostsg/errors.hpp"
#include "hostsg/rng.hpp"
#include "hostsg/tape.hpp"
#include "hostsg/tensor.hpp"

namespace hostsg::nn {

// Named parameter tensors with gradient accumulators. Initialization is a
// pure function of (seed, name): uniform in [-a, a], a = sqrt(6/(fan_in+fan_out)).
class ParamStore {
 public:
  explicit ParamStore(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  Tensor& ensure(const std::string& name, std::vector<std::size_t> shape) {
    auto it = params_.find(name);
    if (it != params_.end()) {
      if (it->second.value.shape != shape)
        throw ShapeError("ParamStore: shape conflict for " + name);
      return it->second.value;
    }
    Entry e;
    e.value = Tensor::zeros(shape);
    e.grad = Tensor::zeros(shape);
    const std::size_t fan_in = shape.size() == 2 ? shape[1] : e.value.size();
    const std::size_t fan_out = shape.size() == 2 ? shape[0] : e.value.size();
    const double a =
        std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Rng rng = Rng::derive(seed_, name);
    for (auto& x : e.value.v) x = rng.uniform(-a, a);
    return params_.emplace(name, std::move(e)).first->second.value;
  }

  Tensor& ensure_zeros(const std::string& name,
                       std::vector<std::size_t> shape) {
    auto it = params_.find(name);
    if (it == params_.end()) {
      Entry e;
      e.value = Tensor::zeros(shape);
      e.grad = Tensor::zeros(shape);
      it = params_.emplace(name, std::move(e)).first;
    }
    return it->second.value;
  }

  bool has(const std::string& name) const { return params_.count(name) != 0; }

  Tensor& value(const std::string& name) {
    auto it = params_.find(name);
    if (it == params_.end()) throw ConfigError("unknown parameter " + name);
    return it->second.value;
  }

  Tensor& grad(const std::string& name) {
    auto it = params_.find(name);
    if (it == params_.end()) throw ConfigError("unknown parameter " + name);
    return it->second.grad;
  }

  void zero_grads() {
    for (auto& [k, e] : params_) e.grad.v.assign(e.grad.v.size(), 0.0);
  }

  template <typename Fn>
  void for_each(Fn&& fn) {
    for (auto& [k, e] : params_) fn(k, e.value, e.grad);
  }

  std::size_t count() const { return params_.size(); }

  // Checkpoint format: versioned JSON blob; loaded strictly by name+shape.
  void save(const std::string& path) const {
    nlohmann::json j;
    j["format"] = "hostsg-params";
    j["version"] = 1;
    j["seed"] = seed_;
    nlohmann::json ps = nlohmann::json::object();
    for (const auto& [k, e] : params_) {
      ps[k] = {{"shape", e.value.shape}, {"values", e.value.v}};
    }
    j["params"] = std::move(ps);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << j.dump();
  }

  void load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError("checkpoint parse error at byte " +
                      std::to_string(e.byte) + ": " + e.what());
    }
    if (j.value("format", "") != "hostsg-params")
      throw DataError("not a hostsg parameter checkpoint: " + path);
    seed_ = j.value("seed", std::uint64_t{0});
    params_.clear();
    for (auto& [k, pv] : j.at("params").items()) {
      Entry e;
      e.value.shape = pv.at("shape").get<std::vector<std::size_t>>();
      e.value.v = pv.at("values").get<std::vector<double>>();
      std::size_t n = 1;
      for (auto d : e.value.shape) n *= d;
      if (n != e.value.v.size())
        throw DataError("checkpoint shape mismatch for parameter " + k);
      e.grad = Tensor::zeros(e.value.shape);
      params_.emplace(k, std::move(e));
    }
  }

 private:
  struct Entry {
    Tensor value;
    Tensor grad;
  };
  std::map<std::string, Entry> params_;
  std::uint64_t seed_;
};

// One forward/backward pass: binds store parameters as tape leaves on first
// use and flushes tape gradients back into the store after backward().
class Session {
 public:
  explicit Session(ParamStore& store) : store_(&store) {}

  Tape& tape() { return tape_; }
  ParamStore& store() { return *store_; }

  Tape::Ref param(const std::string& name, std::vector<std::size_t> shape) {
    auto it = bound_.find(name);
    if (it != bound_.end()) return it->second;
    Tensor& v = store_->ensure(name, std::move(shape));
    const Tape::Ref r = tape_.leaf(v);
    bound_.emplace(name, r);
    return r;
  }

  void backward(Tape::Ref loss) {
    tape_.backward(loss);
    for (const auto& [name, ref] : bound_) {
      Tensor& g = store_->grad(name);
      const Tensor& tg = tape_.grad(ref);
      for (std::size_t i = 0; i < g.size(); ++i) g.v[i] += tg.at(i);
    }
  }

 private:
  Tape tape_;
  ParamStore* store_;
  std::unordered_map<std::string, Tape::Ref> bound_;
};

}  // namespace hostsg::nn
