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

#include "pasta/pipeline.h"

#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "pasta/error.h"

namespace pasta::pipeline {
namespace {

using Json = nlohmann::ordered_json;

struct Loaded {
  UtteranceRecord record;
  pitch::F0Contour contour;
  align::UtteranceAlignment alignment;
};

std::string Describe(const std::exception& e) { return e.what(); }

Json WordsToJson(const std::vector<MarkupWord>& words) {
  Json arr = Json::array();
  for (const auto& w : words) {
    Json e;
    e["text"] = w.text;
    e["pattern"] = w.pattern_id;
    e["state"] = w.state_id;
    e["start"] = w.start;
    e["end"] = w.end;
    arr.push_back(std::move(e));
  }
  return arr;
}

std::vector<MarkupWord> WordsFromJson(const nlohmann::json& arr) {
  std::vector<MarkupWord> out;
  for (const auto& e : arr) {
    MarkupWord w;
    w.text = e.at("text").get<std::string>();
    w.pattern_id = e.at("pattern").get<std::size_t>();
    w.state_id = e.at("state").get<std::size_t>();
    w.start = e.at("start").get<double>();
    w.end = e.at("end").get<double>();
    out.push_back(std::move(w));
  }
  return out;
}

// Calls fn(line, line_no) for every non-blank line.
template <typename Fn>
void ForEachLine(const std::string& text, Fn fn) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    fn(line, line_no);
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (k == 0 || s == 0) throw Error(ErrorCode::kInvalidArgument, "k and s must be positive");
  if (n_f0 < patterns::kMinModelNF0) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_f0 must be at least " + std::to_string(patterns::kMinModelNF0));
  }
  if (max_iter == 0) throw Error(ErrorCode::kInvalidArgument, "max_iter must be positive");
  if (metric == cluster::Metric::kDtw && dba_iter == 0) {
    throw Error(ErrorCode::kInvalidArgument, "dba_iter must be positive");
  }
  if (front_end.decimate < 1) {
    throw Error(ErrorCode::kInvalidFactor, "decimation factor must be at least 1");
  }
}

PreparedCorpus Prepare(const std::vector<UtteranceRecord>& records, pitch::NormMode norm,
                       const FrontEnd& front_end) {
  PreparedCorpus out;
  std::vector<Loaded> loaded;
  for (const auto& r : records) {
    try {
      pitch::F0Contour contour =
          pitch::LoadF0(r.f0_path, pitch::GuessFormat(r.f0_path), front_end.f0);
      if (front_end.decimate > 1) {
        contour = pitch::ResampleWithLowpass(contour, front_end.decimate);
      }
      align::UtteranceAlignment alignment =
          align::LoadAlignment(r.alignment_path, align::GuessAlignmentFormat(r.alignment_path));
      loaded.push_back({r, std::move(contour), std::move(alignment)});
    } catch (const Error& e) {
      out.skipped.push_back({r.utterance_id, Describe(e)});
    }
  }

  std::map<std::string, double> speaker_mean;
  if (norm == pitch::NormMode::kSpeaker) {
    std::map<std::string, std::vector<pitch::F0Contour>> by_speaker;
    for (const auto& l : loaded) by_speaker[l.record.speaker_id].push_back(l.contour);
    for (const auto& [speaker, contours] : by_speaker) {
      try {
        speaker_mean[speaker] = pitch::ComputeMeanF0(contours);
      } catch (const Error&) {
        // Utterances of this speaker are skipped below.
      }
    }
  }

  for (auto& l : loaded) {
    try {
      pitch::NormalizationScope scope{norm, 0.0};
      if (norm == pitch::NormMode::kSpeaker) {
        auto it = speaker_mean.find(l.record.speaker_id);
        if (it == speaker_mean.end()) {
          throw Error(ErrorCode::kNoVoicedFrames,
                      "speaker '" + l.record.speaker_id + "' has no voiced frames");
        }
        scope.mean_f0 = it->second;
      } else {
        scope.mean_f0 = pitch::ComputeMeanF0(std::span<const pitch::F0Contour>(&l.contour, 1));
      }
      momel::MomelSpline spline = momel::FitMomel(l.contour, front_end.momel);
      out.utterances.push_back(
          {std::move(l.record), std::move(l.alignment), std::move(spline), scope});
    } catch (const Error& e) {
      out.skipped.push_back({l.record.utterance_id, Describe(e)});
    }
  }
  return out;
}

TrainOutput RunTrain(const std::vector<UtteranceRecord>& records, const TrainConfig& config) {
  config.Validate();
  PreparedCorpus corpus = Prepare(records, config.norm, config.front_end);
  TrainOutput out;
  out.matrix = patterns::PatternMatrix(config.n_f0);
  out.skipped = std::move(corpus.skipped);
  for (const auto& u : corpus.utterances) {
    try {
      out.matrix.Append(patterns::ExtractPatterns(u.spline, u.alignment, u.scope, config.n_f0,
                                                  u.record.utterance_id));
    } catch (const Error& e) {
      out.skipped.push_back({u.record.utterance_id, Describe(e)});
    }
  }
  if (out.matrix.empty()) {
    std::string reasons;
    for (const auto& s : out.skipped) reasons += "\n  " + s.utterance_id + ": " + s.reason;
    throw Error(ErrorCode::kAllUtterancesSkipped, "no usable utterances" + reasons);
  }
  cluster::TrainOptions opt;
  opt.k = config.k;
  opt.s = config.s;
  opt.metric = config.metric;
  opt.seed = config.seed;
  opt.max_iter = config.max_iter;
  opt.dba_iter = config.dba_iter;
  opt.band = config.band;
  opt.norm_mode = config.norm;
  out.training = cluster::Train(out.matrix, opt);
  out.model = out.training.model;
  return out;
}

MarkupOutput RunMarkup(const std::vector<UtteranceRecord>& records,
                       const cluster::ClusterModel& model, const MarkupOptions& options) {
  model.Validate();
  if (options.n_f0 && *options.n_f0 != model.n_f0) {
    throw Error(ErrorCode::kModelMismatch,
                "configured n_f0 " + std::to_string(*options.n_f0) + " but model has " +
                    std::to_string(model.n_f0));
  }
  if (options.norm && *options.norm != model.norm_mode) {
    throw Error(ErrorCode::kModelMismatch,
                "configured normalization '" + pitch::NormModeName(*options.norm) +
                    "' but model was trained with '" + pitch::NormModeName(model.norm_mode) +
                    "'");
  }
  if (options.front_end.decimate < 1) {
    throw Error(ErrorCode::kInvalidFactor, "decimation factor must be at least 1");
  }
  PreparedCorpus corpus = Prepare(records, model.norm_mode, options.front_end);
  MarkupOutput out;
  out.skipped = std::move(corpus.skipped);
  for (const auto& u : corpus.utterances) {
    try {
      const auto rows = patterns::ExtractPatterns(u.spline, u.alignment, u.scope, model.n_f0,
                                                  u.record.utterance_id);
      MarkupRecord rec;
      rec.utterance_id = u.record.utterance_id;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const cluster::PastaLabel label = cluster::Assign(model, rows[i]);
        const auto& w = u.alignment.words[i];
        rec.words.push_back({w.text, label.pattern_id, label.state_id, w.start, w.end});
      }
      out.records.push_back(std::move(rec));
    } catch (const Error& e) {
      out.skipped.push_back({u.record.utterance_id, Describe(e)});
    }
  }
  return out;
}

std::string MarkupToJsonl(const std::vector<MarkupRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    Json j;
    j["utt"] = r.utterance_id;
    j["words"] = WordsToJson(r.words);
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<MarkupRecord> MarkupFromJsonl(const std::string& jsonl) {
  std::vector<MarkupRecord> out;
  ForEachLine(jsonl, [&](const std::string& line, std::size_t line_no) {
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("utt").get<std::string>(), WordsFromJson(j.at("words"))});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  "markup line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  return out;
}

std::vector<DatasetLine> ExportDataset(const std::vector<MarkupRecord>& markups,
                                       const std::vector<UtteranceRecord>& texts) {
  std::map<std::string, const UtteranceRecord*> by_id;
  for (const auto& t : texts) by_id[t.utterance_id] = &t;
  std::vector<DatasetLine> out;
  for (const auto& m : markups) {
    auto it = by_id.find(m.utterance_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kIdMismatch,
                  "markup utterance '" + m.utterance_id + "' is not in the manifest");
    }
    DatasetLine line;
    line.text = it->second->text;
    if (line.text.empty()) {
      for (const auto& w : m.words) {
        if (!line.text.empty()) line.text += ' ';
        line.text += w.text;
      }
    }
    for (const auto& w : m.words) line.labels.push_back({w.text, w.pattern_id, w.state_id});
    out.push_back(std::move(line));
  }
  return out;
}

std::string DatasetToJsonl(const std::vector<DatasetLine>& lines) {
  std::string out;
  for (const auto& l : lines) {
    Json j;
    j["text"] = l.text;
    Json labels = Json::array();
    for (const auto& lab : l.labels) labels.push_back(Json::array({lab.word, lab.pattern_id, lab.state_id}));
    j["labels"] = std::move(labels);
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<DatasetLine> DatasetFromJsonl(const std::string& jsonl) {
  std::vector<DatasetLine> out;
  ForEachLine(jsonl, [&](const std::string& line, std::size_t line_no) {
    try {
      const auto j = nlohmann::json::parse(line);
      DatasetLine d;
      d.text = j.at("text").get<std::string>();
      for (const auto& lab : j.at("labels")) {
        d.labels.push_back({lab.at(0).get<std::string>(), lab.at(1).get<std::size_t>(),
                            lab.at(2).get<std::size_t>()});
      }
      out.push_back(std::move(d));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  "dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  return out;
}

SynthPlan ParseSynthPlan(const std::string& json) {
  SynthPlan plan;
  try {
    const auto j = nlohmann::json::parse(json);
    for (const auto& w : j.at("words")) {
      intsint::PlanWord pw;
      if (w.is_string()) {
        pw.text = w.get<std::string>();
      } else {
        pw.text = w.at("text").get<std::string>();
        if (w.contains("stress")) pw.stress_vowel = w.at("stress").get<std::size_t>();
        if (w.contains("phones")) pw.phone_count = w.at("phones").get<std::size_t>();
      }
      plan.words.push_back(std::move(pw));
    }
    if (j.contains("accent")) {
      plan.accent = intsint::ParseAccent(j.at("accent").get<std::string>());
    } else if (j.contains("type")) {
      plan.accent = intsint::AccentForType(
          intsint::ParseCommunicativeType(j.at("type").get<std::string>()));
    }
    if (j.contains("nucleus")) plan.nucleus = j.at("nucleus").get<std::size_t>();
    if (j.contains("initial")) {
      plan.tori.initial_tone = intsint::ParseSymbol(j.at("initial").get<std::string>());
    }
    if (j.contains("tb")) plan.tori.exclamation_tb = j.at("tb").get<bool>();
    if (j.contains("marks")) plan.marks = intsint::MarksFromJson(j.at("marks").dump());
    if (j.contains("mean_phone_s")) plan.mean_phone_s = j.at("mean_phone_s").get<double>();
    if (j.contains("key")) plan.params.key = j.at("key").get<double>();
    if (j.contains("range")) plan.params.range = j.at("range").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("text plan: ") + e.what());
  }
  if (plan.words.empty()) throw Error(ErrorCode::kEmptyInput, "text plan has no words");
  if (!plan.marks && !plan.accent) {
    throw Error(ErrorCode::kInvalidArgument, "text plan needs marks, an accent or a type");
  }
  plan.params.Validate();
  return plan;
}

SynthOutput RunSynth(const SynthPlan& plan, const cluster::ClusterModel& model) {
  model.Validate();
  const intsint::PseudoTimeline timeline(plan.words, plan.mean_phone_s);
  SynthOutput out;
  if (plan.marks) {
    out.marks = *plan.marks;
  } else {
    const intsint::ToRIAccent accent{*plan.accent,
                                     plan.nucleus.value_or(timeline.size() - 1)};
    out.marks = intsint::ToriToIntsint(accent, timeline, plan.tori);
  }
  const auto labels = intsint::SynthesizeMarkup(out.marks, timeline, model, plan.params);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& w = timeline.words()[i];
    out.words.push_back({w.text, labels[i].pattern_id, labels[i].state_id, w.start, w.end});
  }
  return out;
}

std::string SynthToJson(const SynthOutput& output) {
  Json j;
  j["marks"] = Json::parse(intsint::MarksToJson(output.marks));
  j["words"] = WordsToJson(output.words);
  return j.dump() + "\n";
}

}  // namespace pasta::pipeline
