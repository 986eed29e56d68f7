// Copyright 2026 The Pasta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pasta: train, markup, synth, export-dataset, plot, stylize.
// Exit codes: 0 success, 1 validation error, 2 runtime/data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pasta/clustering.h"
#include "pasta/error.h"
#include "pasta/momel.h"
#include "pasta/patterns.h"
#include "pasta/pipeline.h"
#include "pasta/pitch.h"
#include "pasta/plot.h"

namespace {

namespace fs = std::filesystem;
using namespace pasta;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Emit(const std::string& out, const std::string& contents) {
  if (out.empty() || out == "-") {
    std::cout << contents;
    return;
  }
  const fs::path path(out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << contents)) throw Error(ErrorCode::kIoError, "cannot write " + out);
}

void ReportSkips(const std::vector<pipeline::Skip>& skipped) {
  for (const auto& s : skipped) {
    std::cerr << "skipped " << s.utterance_id << ": " << s.reason << "\n";
  }
}

struct FrontEndFlags {
  int decimate = 1;
  double f0_min = pitch::kDefaultF0Min;
  double f0_max = pitch::kDefaultF0Max;
  std::optional<double> frame_step;
  momel::FitParams momel;

  void Attach(CLI::App* cmd) {
    cmd->add_option("--decimate", decimate, "Low-pass decimation factor")->capture_default_str();
    cmd->add_option("--f0-min", f0_min, "Lower voicing bound, Hz")->capture_default_str();
    cmd->add_option("--f0-max", f0_max, "Upper voicing bound, Hz")->capture_default_str();
    cmd->add_option("--frame-step", frame_step, "Declared frame step, s");
    cmd->add_option("--window-a", momel.window_a, "Candidate window, s")->capture_default_str();
    cmd->add_option("--max-residual", momel.max_residual, "Relative outlier threshold")
        ->capture_default_str();
    cmd->add_option("--window-b", momel.window_b, "Reduction window, s")->capture_default_str();
    cmd->add_option("--min-gap", momel.min_anchor_gap, "Anchor merge distance, s")
        ->capture_default_str();
  }

  pipeline::FrontEnd Build() const {
    pipeline::FrontEnd fe;
    fe.decimate = decimate;
    fe.f0.f0_min = f0_min;
    fe.f0.f0_max = f0_max;
    fe.f0.frame_step = frame_step;
    fe.momel = momel;
    return fe;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-wise pattern/state intonation modelling"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Fit a cluster model on a corpus manifest");
  std::string manifest;
  std::string out;
  pipeline::TrainConfig cfg;
  std::string metric = "dtw";
  std::string norm = "phrase";
  std::optional<std::size_t> band;
  std::string matrix_out;
  FrontEndFlags train_fe;
  train->add_option("--manifest", manifest, "Corpus manifest CSV")->required();
  train->add_option("--k", cfg.k, "Pattern clusters")->capture_default_str();
  train->add_option("--s", cfg.s, "Level states")->capture_default_str();
  train->add_option("--metric", metric, "dtw or euclidean")->capture_default_str();
  train->add_option("--n-f0", cfg.n_f0, "Samples per word")->capture_default_str();
  train->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  train->add_option("--norm", norm, "phrase or speaker")->capture_default_str();
  train->add_option("--max-iter", cfg.max_iter, "Outer k-means iterations")
      ->capture_default_str();
  train->add_option("--dba-iter", cfg.dba_iter, "Barycenter iterations")->capture_default_str();
  train->add_option("--band", band, "Sakoe-Chiba half-width");
  train->add_option("--matrix-out", matrix_out, "Write the pattern matrix (JSONL)");
  train->add_option("--out", out, "Model JSON")->required();
  train_fe.Attach(train);

  // markup
  auto* markup = app.add_subcommand("markup", "Label every word of a corpus");
  std::string model_path;
  std::optional<std::size_t> markup_n_f0;
  std::optional<std::string> markup_norm;
  FrontEndFlags markup_fe;
  markup->add_option("--manifest", manifest, "Corpus manifest CSV")->required();
  markup->add_option("--model", model_path, "Model JSON")->required();
  markup->add_option("--n-f0", markup_n_f0, "Expected model n_f0");
  markup->add_option("--norm", markup_norm, "Expected normalization");
  markup->add_option("--out", out, "Markup JSONL (default stdout)");
  markup_fe.Attach(markup);

  // synth
  auto* synth = app.add_subcommand("synth", "Labels for a text plan");
  std::string plan_path;
  synth->add_option("--text-plan", plan_path, "Plan JSON")->required();
  synth->add_option("--model", model_path, "Model JSON")->required();
  synth->add_option("--out", out, "Labels JSON (default stdout)");

  // export-dataset
  auto* export_ds = app.add_subcommand("export-dataset", "Classifier dataset from markup");
  std::string markup_path;
  export_ds->add_option("--markup", markup_path, "Markup JSONL")->required();
  export_ds->add_option("--manifest", manifest, "Manifest with sentence texts")->required();
  export_ds->add_option("--out", out, "Dataset JSONL (default stdout)");

  // plot
  auto* plot = app.add_subcommand("plot", "Render a model, spline or markup as SVG");
  std::string plot_model;
  std::string plot_matrix;
  std::string plot_spline;
  std::string plot_f0;
  std::string plot_markup;
  std::string plot_utt;
  auto* opt_model = plot->add_option("--model", plot_model, "Model JSON");
  plot->add_option("--matrix", plot_matrix, "Pattern matrix JSONL drawn as members")
      ->needs(opt_model);
  auto* opt_spline = plot->add_option("--spline", plot_spline, "Spline JSON");
  plot->add_option("--f0", plot_f0, "F0 file drawn under the spline")->needs(opt_spline);
  auto* opt_markup = plot->add_option("--markup", plot_markup, "Markup JSONL");
  plot->add_option("--utt", plot_utt, "Utterance id (default first)")->needs(opt_markup);
  opt_model->excludes(opt_spline)->excludes(opt_markup);
  opt_spline->excludes(opt_markup);
  plot->add_option("--out", out, "SVG file (default stdout)");

  // stylize
  auto* stylize = app.add_subcommand("stylize", "Fit a Momel spline to one F0 file");
  std::string f0_path;
  FrontEndFlags stylize_fe;
  stylize->add_option("--f0", f0_path, "F0 CSV or two-column text")->required();
  stylize->add_option("--out", out, "Spline JSON (default stdout)");
  stylize_fe.Attach(stylize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*train) {
      cfg.metric = cluster::ParseMetric(metric);
      cfg.norm = pitch::ParseNormMode(norm);
      cfg.band = band;
      cfg.front_end = train_fe.Build();
      const auto result = pipeline::RunTrain(pipeline::LoadManifest(manifest), cfg);
      ReportSkips(result.skipped);
      Emit(out, cluster::ModelToJson(result.model));
      if (!matrix_out.empty()) Emit(matrix_out, patterns::MatrixToJsonl(result.matrix));
      std::cerr << "trained on " << result.matrix.size() << " words, k=" << result.model.k()
                << " s=" << result.model.s() << "\n";
    } else if (*markup) {
      pipeline::MarkupOptions opt;
      opt.front_end = markup_fe.Build();
      opt.n_f0 = markup_n_f0;
      if (markup_norm) opt.norm = pitch::ParseNormMode(*markup_norm);
      const auto model = cluster::ModelFromJson(Slurp(model_path));
      const auto result = pipeline::RunMarkup(pipeline::LoadManifest(manifest), model, opt);
      ReportSkips(result.skipped);
      Emit(out, pipeline::MarkupToJsonl(result.records));
    } else if (*synth) {
      const auto model = cluster::ModelFromJson(Slurp(model_path));
      const auto plan = pipeline::ParseSynthPlan(Slurp(plan_path));
      Emit(out, pipeline::SynthToJson(pipeline::RunSynth(plan, model)));
    } else if (*export_ds) {
      const auto markups = pipeline::MarkupFromJsonl(Slurp(markup_path));
      const auto lines = pipeline::ExportDataset(markups, pipeline::LoadManifest(manifest));
      Emit(out, pipeline::DatasetToJsonl(lines));
    } else if (*plot) {
      if (!plot_model.empty()) {
        const auto model = cluster::ModelFromJson(Slurp(plot_model));
        if (plot_matrix.empty()) {
          Emit(out, plot::PlotModel(model));
        } else {
          const auto matrix = patterns::MatrixFromJsonl(Slurp(plot_matrix));
          Emit(out, plot::PlotModel(model, &matrix));
        }
      } else if (!plot_spline.empty()) {
        const auto spline = momel::SplineFromJson(Slurp(plot_spline));
        if (plot_f0.empty()) {
          Emit(out, plot::PlotSpline(spline));
        } else {
          const auto contour = pitch::LoadF0(plot_f0, pitch::GuessFormat(plot_f0));
          Emit(out, plot::PlotSpline(spline, &contour));
        }
      } else if (!plot_markup.empty()) {
        const auto records = pipeline::MarkupFromJsonl(Slurp(plot_markup));
        const pipeline::MarkupRecord* pick = nullptr;
        for (const auto& r : records) {
          if (plot_utt.empty() || r.utterance_id == plot_utt) {
            pick = &r;
            break;
          }
        }
        if (!pick) throw Error(ErrorCode::kIdMismatch, "no matching utterance in markup");
        Emit(out, plot::PlotMarkup(*pick));
      } else {
        throw Error(ErrorCode::kInvalidArgument, "plot needs --model, --spline or --markup");
      }
    } else if (*stylize) {
      const auto fe = stylize_fe.Build();
      auto contour = pitch::LoadF0(f0_path, pitch::GuessFormat(f0_path), fe.f0);
      if (fe.decimate > 1) contour = pitch::ResampleWithLowpass(contour, fe.decimate);
      Emit(out, momel::SplineToJson(momel::FitMomel(contour, fe.momel)) + "\n");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return IsValidationError(e.code()) ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
