#include <loom/netpbm.hpp>
#include <loom/params.hpp>
#include <loom/pipeline.hpp>
#include <loom/report_io.hpp>
#include <loom/stimuli.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path.string());
}

// Shared by run and sweep: params file, then command-line overrides.
struct ModelOptions {
  std::string params_file;
  std::optional<int> top_k;
  std::vector<double> weights;

  void attach(CLI::App& cmd) {
    cmd.add_option("--params", params_file, "key = value parameter file")->check(CLI::ExistingFile);
    cmd.add_option("--top-k", top_k, "Number of inhibited orientations");
    cmd.add_option("--weights", weights, "Channel weights v+ v- w1+ w2- w1- w2+")
        ->expected(6)
        ->delimiter(',');
  }

  loom::ModelParams resolve() const {
    loom::ModelParams p = params_file.empty() ? loom::default_params() : loom::load_params_file(params_file);
    if (top_k) p.top_k = *top_k;
    if (!weights.empty()) {
      std::array<double, 6> w{};
      std::copy(weights.begin(), weights.end(), w.begin());
      p.channel_weights = loom::ChannelWeights::from_array(w);
    }
    if (auto v = loom::validate(p); !v.empty()) throw loom::ValidationError(std::move(v));
    return p;
  }
};

// --- synth -------------------------------------------------------------------

struct SynthArgs {
  std::string config;
  std::string kind;
  std::string heading;
  std::optional<int> steps;
  std::optional<double> contrast;
  std::optional<double> rate;
  bool inverted = false;
  std::string out;
};

int synth(const SynthArgs& a) {
  loom::Scenario s;
  if (!a.config.empty()) s = loom::parse_scenario(read_file(a.config));
  if (!a.kind.empty()) s.kind = loom::parse_scenario_kind(a.kind);
  if (a.contrast) {
    const loom::Scenario c = loom::disk_with_contrast(*a.contrast, s.stimulus_k);
    s.background_gray = c.background_gray;
    s.foreground_gray = c.foreground_gray;
  }
  if (!a.heading.empty()) s.bar_heading = loom::parse_heading(a.heading);
  if (a.steps) s.steps = *a.steps;
  if (a.rate) s.stimulus_k = *a.rate;
  if (a.inverted) s.inverted = true;

  const loom::FrameSequence seq = loom::generate(s);
  const auto paths = loom::write_frames(a.out, seq.frames);
  write_file(fs::path(a.out) / "scenario.cfg", loom::serialize(s));
  std::printf("wrote %zu frames to %s\n", paths.size(), a.out.c_str());
  if (seq.clamped) std::fprintf(stderr, "note: stimulus geometry was clamped to the frame\n");
  return 0;
}

// --- run ---------------------------------------------------------------------

struct RunArgs {
  ModelOptions model;
  std::string input;
  std::string out;
  bool overlay = false;
  bool debug_maps = false;
  bool gate_targets = false;
};

int run(const RunArgs& a) {
  const loom::ModelParams params = a.model.resolve();
  loom::PipelineOptions opts;
  opts.keep_maps = a.debug_maps;
  opts.targets = a.gate_targets ? loom::TargetReporting::kCollisionGated : loom::TargetReporting::kEveryFrame;

  loom::FrameDirectory frames(a.input);
  const fs::path out(a.out);
  fs::create_directories(out);
  if (a.overlay) fs::create_directories(out / "overlay");

  auto first = frames.next_raw();
  loom::Pipeline pipeline(params, opts);
  pipeline.prime(loom::normalize_gray(*first));

  std::vector<loom::FrameReport> reports;
  int warnings = 0;
  char name[64];
  while (auto raw = frames.next_raw()) {
    loom::FrameReport r = pipeline.step(loom::normalize_gray(*raw));
    if (a.overlay) {
      std::snprintf(name, sizeof name, "overlay_%04d.ppm", r.t);
      char scale[96];
      std::snprintf(scale, sizeof scale, "arrow_scale %g px per unit energy, capped at the frame diagonal",
                    loom::kDefaultArrowScale);
      loom::write_ppm(out / "overlay" / name, loom::render_overlay(*raw, r), {scale});
    }
    if (a.debug_maps) {
      loom::dump_debug_maps(out / "debug", r);
      r.maps.reset();
    }
    warnings += r.collision ? 1 : 0;
    reports.push_back(std::move(r));
  }

  loom::emit_timeseries(out / "timeseries.csv", reports);
  loom::emit_targets(out / "targets.jsonl", reports);
  write_file(out / "params.cfg", loom::serialize(params));
  std::printf("processed %zu frames, %d with a collision warning; results in %s\n", frames.size(), warnings,
              a.out.c_str());
  return 0;
}

// --- sweep -------------------------------------------------------------------

struct SweepArgs {
  ModelOptions model;
  std::vector<double> contrasts{0.25, 0.5, 0.75, 1.0};
  std::vector<double> rates{0.5, 1.0, 1.5, 2.0};
  double fixed_contrast = 1.0;
  double fixed_rate = 1.0;
  std::string out;
};

struct SweepRow {
  std::string axis;
  double contrast = 0.0;
  double rate = 0.0;
  double peak_u = 0.0;
  double peak_out = 0.5;
  int warnings = 0;
};

SweepRow sweep_point(const loom::ModelParams& params, std::string axis, double contrast, double rate) {
  loom::Scenario s = loom::disk_with_contrast(contrast, rate);
  s.steps = s.approach_end + 1;
  std::vector<loom::Field> frames;
  for (const auto& f : loom::generate(s).frames) frames.push_back(loom::normalize_gray(f));
  loom::Pipeline pipeline(params);
  SweepRow row{std::move(axis), contrast, rate};
  for (const auto& r : loom::run_sequence(pipeline, frames)) {
    if (r.t < s.approach_start) continue;
    row.peak_u = std::max(row.peak_u, std::abs(r.u));
    row.peak_out = std::max(row.peak_out, r.out);
    row.warnings += r.collision ? 1 : 0;
  }
  return row;
}

int sweep(const SweepArgs& a) {
  const loom::ModelParams params = a.model.resolve();
  std::vector<std::future<SweepRow>> jobs;
  for (double c : a.contrasts)
    jobs.push_back(std::async(std::launch::async, sweep_point, params, "contrast", c, a.fixed_rate));
  for (double k : a.rates)
    jobs.push_back(std::async(std::launch::async, sweep_point, params, "rate", a.fixed_contrast, k));

  std::ostringstream csv;
  csv << "sweep,contrast,rate,peak_abs_u,peak_out,warning_frames\n";
  std::printf("%-9s %9s %6s %14s %12s %9s\n", "sweep", "contrast", "rate", "peak |u|", "peak out", "warnings");
  for (auto& job : jobs) {
    const SweepRow r = job.get();
    csv << r.axis << ',' << loom::format_sig9(r.contrast) << ',' << loom::format_sig9(r.rate) << ','
        << loom::format_sig9(r.peak_u) << ',' << loom::format_sig9(r.peak_out) << ',' << r.warnings << '\n';
    std::printf("%-9s %9.3f %6.2f %14.6g %12.9f %9d\n", r.axis.c_str(), r.contrast, r.rate, r.peak_u, r.peak_out,
                r.warnings);
  }
  if (!a.out.empty()) write_file(fs::path(a.out) / "sweep.csv", csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Looming-object detector for grayscale frame sequences"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic scenario to numbered PGM frames");
  synth_cmd->add_option("--config", synth_args.config, "Scenario key = value file")->check(CLI::ExistingFile);
  synth_cmd->add_option("--kind", synth_args.kind, "looming_disk | translating_bar | looming_over_stripes");
  synth_cmd->add_option("--heading", synth_args.heading, "Bar heading: right | left | up | down");
  synth_cmd->add_option("--steps", synth_args.steps, "Number of frames");
  synth_cmd->add_option("--contrast", synth_args.contrast, "Weber contrast of the disk on a white background");
  synth_cmd->add_option("--rate", synth_args.rate, "Disk expansion rate k (px/step)");
  synth_cmd->add_flag("--inverted", synth_args.inverted, "Write 255 - F");
  synth_cmd->add_option("--out", synth_args.out, "Output directory")->required();

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Process a frame directory");
  run_args.model.attach(*run_cmd);
  run_cmd->add_option("--input", run_args.input, "Directory of numbered P5 frames")->required();
  run_cmd->add_option("--out", run_args.out, "Output directory")->required();
  run_cmd->add_flag("--overlay", run_args.overlay, "Write PPM overlays with targets");
  run_cmd->add_flag("--debug-maps", run_args.debug_maps, "Write G, G_sigma, M_a, M_d, V and V' per frame");
  run_cmd->add_flag("--gate-targets", run_args.gate_targets, "Report targets only on collision frames");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Peak responses over contrast and expansion-rate grids");
  sweep_args.model.attach(*sweep_cmd);
  sweep_cmd->add_option("--contrasts", sweep_args.contrasts, "Weber contrasts")->delimiter(',');
  sweep_cmd->add_option("--rates", sweep_args.rates, "Expansion rates in px/step")->delimiter(',');
  sweep_cmd->add_option("--fixed-contrast", sweep_args.fixed_contrast, "Contrast held during the rate sweep");
  sweep_cmd->add_option("--fixed-rate", sweep_args.fixed_rate, "Rate held during the contrast sweep");
  sweep_cmd->add_option("--out", sweep_args.out, "Directory for sweep.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) return synth(synth_args);
    if (*run_cmd) return run(run_args);
    if (*sweep_cmd) return sweep(sweep_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "loomdet: error: %s\n", e.what());
    return 1;
  }
  return 1;
}
