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

// Corpus runs: training, markup, text-plan synthesis and dataset export.
//
// Utterances that fail to load or stylize are skipped and reported; a run
// only fails when nothing usable is left.

#ifndef PASTA_PIPELINE_H_
#define PASTA_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pasta/alignment.h"
#include "pasta/clustering.h"
#include "pasta/intsint.h"
#include "pasta/momel.h"
#include "pasta/patterns.h"
#include "pasta/pitch.h"
#include "pasta/timeline.h"

namespace pasta::pipeline {

// Manifest CSV: utterance_id,speaker_id,f0_path,alignment_path,text.
// The header line is optional; relative paths resolve against the
// manifest's directory.
struct UtteranceRecord {
  std::string utterance_id;
  std::string speaker_id;
  std::filesystem::path f0_path;
  std::filesystem::path alignment_path;
  std::string text;
};

std::vector<UtteranceRecord> ParseManifest(const std::string& csv,
                                           const std::filesystem::path& base_dir = {});
std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path& path);

// Settings shared by training and markup preprocessing.
struct FrontEnd {
  pitch::LoadOptions f0;
  int decimate = 1;
  momel::FitParams momel;
};

struct TrainConfig {
  std::size_t k = cluster::kDefaultK;
  std::size_t s = cluster::kDefaultS;
  cluster::Metric metric = cluster::Metric::kDtw;
  std::size_t n_f0 = patterns::kDefaultNF0;
  std::uint64_t seed = 0;
  pitch::NormMode norm = pitch::NormMode::kPhrase;
  std::size_t max_iter = cluster::kDefaultMaxIter;
  std::size_t dba_iter = cluster::kDefaultDbaIter;
  cluster::Band band;
  FrontEnd front_end;

  // Throws InvalidArgument on out-of-range settings.
  void Validate() const;
};

struct Skip {
  std::string utterance_id;
  std::string reason;
};

// One utterance after loading, stylization and normalization bookkeeping.
struct PreparedUtterance {
  UtteranceRecord record;
  align::UtteranceAlignment alignment;
  momel::MomelSpline spline;
  pitch::NormalizationScope scope;
};

struct PreparedCorpus {
  std::vector<PreparedUtterance> utterances;
  std::vector<Skip> skipped;
};

PreparedCorpus Prepare(const std::vector<UtteranceRecord>& records, pitch::NormMode norm,
                       const FrontEnd& front_end);

struct TrainOutput {
  cluster::ClusterModel model;
  patterns::PatternMatrix matrix{patterns::kDefaultNF0};
  cluster::TrainResult training;
  std::vector<Skip> skipped;
};

TrainOutput RunTrain(const std::vector<UtteranceRecord>& records, const TrainConfig& config);

struct MarkupWord {
  std::string text;
  std::size_t pattern_id = 0;
  std::size_t state_id = 0;
  double start = 0.0;
  double end = 0.0;

  bool operator==(const MarkupWord&) const = default;
};

struct MarkupRecord {
  std::string utterance_id;
  std::vector<MarkupWord> words;

  bool operator==(const MarkupRecord&) const = default;
};

struct MarkupOptions {
  FrontEnd front_end;
  // When set they must agree with the model, else ModelMismatch.
  std::optional<std::size_t> n_f0;
  std::optional<pitch::NormMode> norm;
};

struct MarkupOutput {
  std::vector<MarkupRecord> records;
  std::vector<Skip> skipped;
};

MarkupOutput RunMarkup(const std::vector<UtteranceRecord>& records,
                       const cluster::ClusterModel& model, const MarkupOptions& options = {});

// JSON lines: {"utt": id, "words": [{"text", "pattern", "state", "start", "end"}]}.
std::string MarkupToJsonl(const std::vector<MarkupRecord>& records);
std::vector<MarkupRecord> MarkupFromJsonl(const std::string& jsonl);

struct DatasetLabel {
  std::string word;
  std::size_t pattern_id = 0;
  std::size_t state_id = 0;

  bool operator==(const DatasetLabel&) const = default;
};

struct DatasetLine {
  std::string text;
  std::vector<DatasetLabel> labels;

  bool operator==(const DatasetLine&) const = default;
};

// One line per sentence; the text comes from the manifest. A markup id that
// the manifest lacks raises IdMismatch.
std::vector<DatasetLine> ExportDataset(const std::vector<MarkupRecord>& markups,
                                       const std::vector<UtteranceRecord>& texts);

// {"text": str, "labels": [[word, pattern_id, state_id], ...]}
std::string DatasetToJsonl(const std::vector<DatasetLine>& lines);
std::vector<DatasetLine> DatasetFromJsonl(const std::string& jsonl);

// Text plan for synthesis:
// {"words": ["молок+о", {"text": "да", "stress": 0, "phones": 2}],
//  "type": "statement" | "accent": "H*L", "nucleus": 1, "initial": "M",
//  "tb": false, "marks": [{"sym": "M", "t": 0}], "mean_phone_s": 0.08,
//  "key": 1.0, "range": 0.6667}
// Explicit marks take precedence over type/accent. The nucleus defaults to
// the last word.
struct SynthPlan {
  std::vector<intsint::PlanWord> words;
  std::optional<intsint::Accent> accent;
  std::optional<std::size_t> nucleus;
  intsint::ToriOptions tori;
  std::optional<std::vector<intsint::IntsintMark>> marks;
  double mean_phone_s = intsint::kDefaultMeanPhone;
  intsint::IntsintParams params;
};

SynthPlan ParseSynthPlan(const std::string& json);

struct SynthOutput {
  std::vector<intsint::IntsintMark> marks;
  std::vector<MarkupWord> words;
};

SynthOutput RunSynth(const SynthPlan& plan, const cluster::ClusterModel& model);

// {"marks": [...], "words": [{"text", "pattern", "state", "start", "end"}]}
std::string SynthToJson(const SynthOutput& output);

}  // namespace pasta::pipeline

#endif  // PASTA_PIPELINE_H_
