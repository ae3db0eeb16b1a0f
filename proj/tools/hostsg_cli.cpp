// Command-line front end: dataset synthesis, staged graph construction,
// training, evaluation, ablations, and graph inspection.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numeric error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hostsg/config.hpp"
#include "hostsg/graph_json.hpp"
#include "hostsg/json_io.hpp"
#include "hostsg/model.hpp"
#include "hostsg/synthetic.hpp"
#include "hostsg/train.hpp"

namespace {

using namespace hostsg;

std::vector<SyntheticSample> load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out << bytes;
}

nn::ModelConfig model_config(const Config& c) {
  nn::ModelConfig m;
  m.hidden = static_cast<std::size_t>(c.get_int("hidden", 64));
  m.heads = static_cast<std::size_t>(c.get_int("heads", 3));
  m.multipath_layers = static_cast<std::size_t>(c.get_int("layers", 3));
  m.iou_d = c.get_double("iou", 0.5);
  m.gamma = c.get_double("gamma", 0.3);
  m.top_k = static_cast<std::size_t>(c.get_int("top_k", 15));
  m.keyframes = static_cast<std::size_t>(c.get_int("keyframes", 5));
  m.dropout = c.get_double("dropout", 0.1);
  m.p_cut = c.get_double("p_cut", 0.1);
  m.gib_beta = c.get_double("gib_beta", 1.0);
  m.eta1 = c.get_double("eta1", 1.0);
  m.eta2 = c.get_double("eta2", 1.0);
  m.eta3 = c.get_double("eta3", 1.0);
  m.max_text_len = static_cast<std::size_t>(c.get_int("max_text_len", 80));
  m.beam = static_cast<std::size_t>(c.get_int("beam", 5));
  m.use_sg_features = c.get_bool("use_sg_features", true);
  m.use_mapping = c.get_bool("use_mapping", true);
  m.use_refine = c.get_bool("use_refine", true);
  m.use_multipath = c.get_bool("use_multipath", true);
  m.use_base_gat = c.get_bool("use_base_gat", true);
  m.use_ggnn = c.get_bool("use_ggnn", true);
  m.use_gib = c.get_bool("use_gib", true);
  return m;
}

nn::TrainConfig train_config(const Config& c) {
  nn::TrainConfig t;
  t.lr = c.get_double("lr", 1e-4);
  t.lr_final_frac = c.get_double("lr_final_frac", 0.05);
  t.batch = static_cast<std::size_t>(c.get_int("batch", 4));
  t.epochs = static_cast<std::size_t>(c.get_int("epochs", 20));
  t.seed = static_cast<std::uint64_t>(c.get_int("seed", 7));
  return t;
}

nn::Vocab make_vocab(const std::vector<SyntheticSample>& samples,
                     const Config& c) {
  return nn::Vocab::from_samples(
      samples, synth::token_vocab().size(), synth::verb_count(),
      static_cast<std::size_t>(c.get_int("relations", 4)));
}

nlohmann::json eval_to_json(const nn::EvalResult& e) {
  return {{"verb_acc1", e.verb_acc1}, {"verb_acc5", e.verb_acc5},
          {"verb_rec5", e.verb_rec5}, {"rel_macro_acc", e.rel_macro_acc},
          {"rouge_l", e.rouge},       {"samples", e.samples}};
}

int run(int argc, char** argv) {
  CLI::App app{"holistic spatio-temporal scene graph pipeline"};
  app.require_subcommand(1);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
  std::string out_path = "dataset.json";
  std::size_t n_samples = 10;
  std::uint64_t seed = 1;
  GeneratorConfig gen;
  synth_cmd->add_option("--out", out_path, "output file");
  synth_cmd->add_option("--samples", n_samples, "sample count");
  synth_cmd->add_option("--seed", seed, "generator seed");
  synth_cmd->add_option("--clips", gen.clips, "clips per sample");
  synth_cmd->add_option("--frames", gen.frames_per_clip, "frames per clip");
  synth_cmd->add_option("--objects", gen.objects_per_frame,
                        "objects per frame");
  synth_cmd->add_option("--feature-dim", gen.feature_dim,
                        "visual feature dimension");
  synth_cmd->add_option("--noise", gen.noise, "feature noise stddev");

  // build
  auto* build_cmd =
      app.add_subcommand("build", "run graph construction stages");
  std::string in_path, stage = "tsg", build_out;
  std::size_t sample_idx = 0;
  double iou_d = 0.5, sim_threshold = 0.3;
  build_cmd->add_option("--in", in_path, "dataset file")->required();
  build_cmd->add_option("--stage", stage, "tsg | hostsg | ice");
  build_cmd->add_option("--sample", sample_idx, "sample index");
  build_cmd->add_option("--out", build_out, "output file (default stdout)");
  build_cmd->add_option("--iou", iou_d, "static merge IoU threshold");
  build_cmd->add_option("--sim-threshold", sim_threshold,
                        "coreference similarity threshold");

  // train
  auto* train_cmd = app.add_subcommand("train", "train the model");
  std::string data_path, config_path, params_path = "params.json";
  std::string log_path, trace_path;
  train_cmd->add_option("--data", data_path, "dataset file")->required();
  train_cmd->add_option("--config", config_path, "key = value config file");
  train_cmd->add_option("--params", params_path, "checkpoint output");
  train_cmd->add_option("--log", log_path, "JSON-lines training log");
  train_cmd->add_option("--trace", trace_path,
                        "JSON-lines edge refinement trace");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint");
  std::string eval_data, eval_config, eval_params;
  eval_cmd->add_option("--data", eval_data, "dataset file")->required();
  eval_cmd->add_option("--config", eval_config, "config file");
  eval_cmd->add_option("--params", eval_params, "checkpoint file")->required();

  // ablate
  auto* abl_cmd =
      app.add_subcommand("ablate", "train with each module disabled");
  std::string abl_data, abl_config, abl_switch;
  abl_cmd->add_option("--data", abl_data, "dataset file")->required();
  abl_cmd->add_option("--config", abl_config, "config file");
  abl_cmd->add_option("--switch", abl_switch,
                      "run only this variant (default: all)");

  // inspect
  auto* ins_cmd = app.add_subcommand("inspect", "describe or render a sample");
  std::string ins_data, ins_stage = "ice", ins_out;
  std::size_t ins_sample = 0;
  bool ins_dot = false;
  ins_cmd->add_option("--in", ins_data, "dataset file")->required();
  ins_cmd->add_option("--stage", ins_stage, "tsg | hostsg | ice");
  ins_cmd->add_option("--sample", ins_sample, "sample index");
  ins_cmd->add_flag("--dot", ins_dot, "emit graphviz DOT (ice stage)");
  ins_cmd->add_option("--out", ins_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  auto emit = [](const std::string& path, const std::string& bytes) {
    if (path.empty())
      std::cout << bytes << "\n";
    else
      write_file(path, bytes);
  };

  auto staged = [&](const std::vector<SyntheticSample>& samples,
                    std::size_t idx, const std::string& st, double d,
                    double gamma) -> nlohmann::json {
    if (idx >= samples.size())
      throw DataError("sample index " + std::to_string(idx) +
                      " out of range (dataset has " +
                      std::to_string(samples.size()) + ")");
    std::vector<Tsg> tsgs;
    for (const auto& clip : samples[idx].clips)
      tsgs.push_back(build_tsg(clip, d));
    if (st == "tsg") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& t : tsgs) arr.push_back(tsg_to_json(t));
      return arr;
    }
    HostSg host = build_hostsg(std::move(tsgs), gamma);
    if (st == "hostsg") return hostsg_to_json(host);
    if (st == "ice") return ice_to_json(build_ice(std::move(host)));
    throw ConfigError("unknown stage " + st + " (expected tsg, hostsg, ice)");
  };

  if (*synth_cmd) {
    const auto samples = generate_dataset(gen, n_samples, seed);
    write_file(out_path, serialize_dataset(samples));
    std::cout << "wrote " << samples.size() << " samples to " << out_path
              << "\n";
    return 0;
  }

  if (*build_cmd) {
    const auto samples = load_dataset(in_path);
    emit(build_out,
         staged(samples, sample_idx, stage, iou_d, sim_threshold).dump(2));
    return 0;
  }

  if (*train_cmd) {
    const Config cfg =
        config_path.empty() ? Config{} : Config::load(config_path);
    const auto samples = load_dataset(data_path);
    const nn::ModelConfig mc = model_config(cfg);
    nn::TrainConfig tc = train_config(cfg);
    const nn::Vocab vocab = make_vocab(samples, cfg);
    std::vector<IceGraph> graphs;
    for (const auto& s : samples)
      graphs.push_back(nn::preprocess(s, mc, tc.seed));
    std::ofstream log_file, trace_file;
    if (!log_path.empty()) {
      log_file.open(log_path);
      if (!log_file) throw DataError("cannot open " + log_path);
      tc.log = &log_file;
    } else {
      tc.log = &std::cout;
    }
    if (!trace_path.empty()) {
      trace_file.open(trace_path);
      if (!trace_file) throw DataError("cannot open " + trace_path);
      tc.trace = &trace_file;
    }
    nn::ParamStore ps(tc.seed);
    const nn::TrainResult r =
        nn::train_model(ps, mc, vocab, samples, graphs, tc);
    ps.save(params_path);
    const auto [f0, f1] = nn::fluctuation_deciles(r.fluctuation);
    nlohmann::json summary{{"event", "done"},
                           {"final_loss",
                            r.epoch_loss.empty() ? 0.0 : r.epoch_loss.back()},
                           {"fluctuation_first_decile", f0},
                           {"fluctuation_last_decile", f1},
                           {"params", params_path}};
    (*tc.log) << summary.dump() << "\n";
    return 0;
  }

  if (*eval_cmd) {
    const Config cfg =
        eval_config.empty() ? Config{} : Config::load(eval_config);
    const auto samples = load_dataset(eval_data);
    const nn::ModelConfig mc = model_config(cfg);
    const nn::Vocab vocab = make_vocab(samples, cfg);
    std::vector<IceGraph> graphs;
    for (const auto& s : samples)
      graphs.push_back(nn::preprocess(s, mc, train_config(cfg).seed));
    nn::ParamStore ps;
    ps.load(eval_params);
    std::cout << eval_to_json(nn::evaluate(ps, mc, vocab, samples, graphs))
                     .dump()
              << "\n";
    return 0;
  }

  if (*abl_cmd) {
    const Config cfg = abl_config.empty() ? Config{} : Config::load(abl_config);
    const auto samples = load_dataset(abl_data);
    const nn::TrainConfig tc = train_config(cfg);
    const nn::Vocab vocab = make_vocab(samples, cfg);
    const std::vector<std::pair<std::string, void (*)(nn::ModelConfig&)>>
        variants{
            {"full", [](nn::ModelConfig&) {}},
            {"no_sg_features",
             [](nn::ModelConfig& m) { m.use_sg_features = false; }},
            {"no_mapping", [](nn::ModelConfig& m) { m.use_mapping = false; }},
            {"no_refine", [](nn::ModelConfig& m) { m.use_refine = false; }},
            {"no_multipath",
             [](nn::ModelConfig& m) { m.use_multipath = false; }},
            {"no_base_gat", [](nn::ModelConfig& m) { m.use_base_gat = false; }},
            {"no_ggnn", [](nn::ModelConfig& m) { m.use_ggnn = false; }},
        };
    if (!abl_switch.empty()) {
      bool known = false;
      std::string valid;
      for (const auto& [name, tweak] : variants) {
        known = known || name == abl_switch;
        valid += (valid.empty() ? "" : ", ") + name;
      }
      if (!known)
        throw ConfigError("unknown ablation switch " + abl_switch +
                          " (valid: " + valid + ")");
    }
    for (const auto& [name, tweak] : variants) {
      if (!abl_switch.empty() && name != abl_switch) continue;
      nn::ModelConfig mc = model_config(cfg);
      tweak(mc);
      std::vector<IceGraph> graphs;
      for (const auto& s : samples)
        graphs.push_back(nn::preprocess(s, mc, tc.seed));
      nn::ParamStore ps(tc.seed);
      nn::train_model(ps, mc, vocab, samples, graphs, tc);
      nlohmann::json j = eval_to_json(
          nn::evaluate(ps, mc, vocab, samples, graphs));
      j["variant"] = name;
      std::cout << j.dump() << "\n";
    }
    return 0;
  }

  if (*ins_cmd) {
    const auto samples = load_dataset(ins_data);
    if (ins_dot) {
      if (ins_sample >= samples.size())
        throw DataError("sample index out of range");
      std::vector<Tsg> tsgs;
      for (const auto& clip : samples[ins_sample].clips)
        tsgs.push_back(build_tsg(clip, 0.5));
      emit(ins_out, ice_to_dot(build_ice(build_hostsg(std::move(tsgs), 0.3))));
    } else {
      emit(ins_out, staged(samples, ins_sample, ins_stage, 0.5, 0.3).dump(2));
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hostsg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const hostsg::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const hostsg::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const hostsg::ShapeError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
