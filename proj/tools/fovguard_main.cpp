// fovguard: optimizer and simulator for privacy-aware proactive
// tile-based VR streaming.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fovguard/cli.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
  std::string config_path;
  std::optional<double> rho_s;
  std::optional<double> tau;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> predictor;
  std::optional<double> c_com;
  std::optional<double> c_cpt;
  std::optional<int> l0;
  std::optional<int> segments;
  bool print_config = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--rho", opts.rho_s, "SDoP requirement in [0, 1]");
  cmd->add_option("--tau", opts.tau, "observation sampling interval, s");
  cmd->add_option("--seed", opts.seed, "RNG seed");
  cmd->add_option("--predictor", opts.predictor, "trivial_motion | linear_extrapolation");
  cmd->add_option("--c-com", opts.c_com, "transmission rate, bits/s");
  cmd->add_option("--c-cpt", opts.c_cpt, "computing rate, bits/s");
  cmd->add_option("--l0", opts.l0, "first proactively streamed segment");
  cmd->add_option("--segments", opts.segments, "segment count L");
  cmd->add_flag("--print-config", opts.print_config, "echo the resolved config to stderr");
}

fovguard::RunConfig resolve_config(const CommonOpts& opts) {
  fovguard::RunConfig cfg =
      opts.config_path.empty() ? fovguard::default_config() : fovguard::load_config(opts.config_path);
  if (opts.rho_s) cfg.rho_s = *opts.rho_s;
  if (opts.tau) cfg.tau = *opts.tau;
  if (opts.seed) {
    cfg.seed = *opts.seed;
    cfg.synth.seed = *opts.seed;
  }
  if (opts.predictor) cfg.predictor = fovguard::predictor_from_string(*opts.predictor);
  if (opts.c_com || opts.c_cpt) {
    fovguard::Rates r = cfg.rates.value_or(fovguard::Rates{2.85e9, 2.2e9});
    if (opts.c_com) r.c_com = *opts.c_com;
    if (opts.c_cpt) r.c_cpt = *opts.c_cpt;
    cfg.rates = r;
    cfg.channel.reset();
    cfg.compute.reset();
  }
  if (opts.l0) cfg.clock.l0 = *opts.l0;
  if (opts.segments) cfg.clock.segments = *opts.segments;
  cfg.validate();
  if (opts.print_config) std::cerr << fovguard::config_to_json(cfg).dump(2) << "\n";
  return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FoV-privacy-aware proactive VR streaming simulator"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* optimize = app.add_subcommand("optimize", "closed-form duration split for the configured SDoP");
  add_common(optimize, opts);
  std::string opt_out;
  optimize->add_option("--out", opt_out, "write the plan JSON to a file");

  auto* simulate = app.add_subcommand("simulate", "run the streaming pipeline over traces");
  add_common(simulate, opts);
  std::string sim_traces, sim_out;
  int sim_synth_count = 0;
  simulate->add_option("--traces", sim_traces, "trace file or directory");
  simulate->add_option("--synth-count", sim_synth_count, "use N synthetic traces instead of --traces");
  simulate->add_option("--out", sim_out, "write the report JSON to a file");

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep (rho_s, R_cc*) cells and emit a CSV matrix");
  add_common(sweep_cmd, opts);
  std::string sweep_traces, sweep_out;
  int sweep_synth_count = 0;
  sweep_cmd->add_option("--traces", sweep_traces, "trace file or directory");
  sweep_cmd->add_option("--synth-count", sweep_synth_count, "use N synthetic traces instead of --traces");
  sweep_cmd->add_option("--out", sweep_out, "write the CSV to a file");

  auto* gen = app.add_subcommand("gen-traces", "generate seeded synthetic head-movement traces");
  add_common(gen, opts);
  int gen_count = 0;
  std::string gen_out_dir = ".";
  gen->add_option("--count", gen_count, "number of traces")->required();
  gen->add_option("--out-dir", gen_out_dir, "output directory");

  auto* classify = app.add_subcommand("classify", "leakage verdicts for deployment cases");
  bool classify_all = false;
  int classify_case = 0;
  std::string camouflage = "off";
  classify->add_flag("--all", classify_all, "print all 12 canonical cases");
  classify->add_option("--case", classify_case, "canonical case number 1..12");
  classify->add_option("--camouflage", camouflage, "on | off")->check(CLI::IsMember({"on", "off"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*optimize) {
      const auto cfg = resolve_config(opts);
      const auto j = fovguard::cmd_optimize(cfg);
      const std::string text = j.dump(2) + "\n";
      if (!opt_out.empty()) write_file(opt_out, text);
      std::cout << text;
      return kExitOk;
    }
    if (*simulate || *sweep_cmd) {
      const auto cfg = resolve_config(opts);
      const std::string trace_path = *simulate ? sim_traces : sweep_traces;
      const int synth_count = *simulate ? sim_synth_count : sweep_synth_count;
      std::vector<fovguard::Trace> traces;
      if (synth_count > 0) {
        fovguard::SynthParams params = cfg.synth;
        params.duration = std::max(params.duration, (cfg.clock.segments + 1) * cfg.clock.t_seg);
        traces = fovguard::synth_traces(params, synth_count);
      } else if (!trace_path.empty()) {
        traces = fovguard::load_traces(trace_path, cfg.trace_format);
      } else {
        std::cerr << "error: need --traces or --synth-count\n";
        return kExitConfig;
      }
      if (*simulate) {
        const auto j = fovguard::cmd_simulate(cfg, traces);
        const std::string text = j.dump(2) + "\n";
        if (!sim_out.empty()) write_file(sim_out, text);
        std::cout << j["aggregate"].dump(2) << "\n";
      } else {
        const std::string csv = fovguard::cmd_sweep(cfg, traces);
        if (!sweep_out.empty()) write_file(sweep_out, csv);
        std::cout << csv;
      }
      return kExitOk;
    }
    if (*gen) {
      const auto cfg = resolve_config(opts);
      const auto written = fovguard::cmd_gen_traces(cfg, gen_count, gen_out_dir);
      std::cout << "wrote " << written.size() << " traces to " << gen_out_dir << "\n";
      return kExitOk;
    }
    if (*classify) {
      const bool camo = camouflage == "on";
      if (classify_all) {
        std::cout << fovguard::cmd_classify_all(camo);
      } else if (classify_case >= 1) {
        std::cout << fovguard::cmd_classify_case(classify_case, camo);
      } else {
        std::cerr << "error: need --all or --case N\n";
        return kExitConfig;
      }
      return kExitOk;
    }
  } catch (const fovguard::InfeasiblePlan& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const fovguard::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
