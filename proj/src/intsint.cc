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

#include "pasta/intsint.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include <json.hpp>

#include "pasta/error.h"

namespace pasta::intsint {

char SymbolChar(Symbol symbol) {
  switch (symbol) {
    case Symbol::kT: return 'T';
    case Symbol::kM: return 'M';
    case Symbol::kB: return 'B';
    case Symbol::kH: return 'H';
    case Symbol::kL: return 'L';
    case Symbol::kU: return 'U';
    case Symbol::kD: return 'D';
    case Symbol::kS: return 'S';
  }
  return '?';
}

Symbol ParseSymbol(std::string_view name) {
  if (name.size() == 1) {
    for (Symbol s : kAllSymbols) {
      if (SymbolChar(s) == name[0]) return s;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown INTSINT symbol '" + std::string(name) + "'");
}

bool IsAbsolute(Symbol symbol) {
  return symbol == Symbol::kT || symbol == Symbol::kM || symbol == Symbol::kB;
}

void IntsintParams::Validate() const {
  if (!(key > 0.0) || !std::isfinite(key)) {
    throw Error(ErrorCode::kInvalidArgument, "INTSINT key must be positive");
  }
  if (!(range > 0.0) || !(range < 2.0 * key)) {
    throw Error(ErrorCode::kInvalidArgument, "INTSINT range must lie in (0, 2 * key)");
  }
}

double Target(Symbol symbol, double prev, const IntsintParams& params) {
  const double top = params.top();
  const double bottom = params.bottom();
  double v = prev;
  switch (symbol) {
    case Symbol::kT: v = top; break;
    case Symbol::kM: v = params.key; break;
    case Symbol::kB: v = bottom; break;
    case Symbol::kH: v = (prev + top) / 2.0; break;
    case Symbol::kL: v = (prev + bottom) / 2.0; break;
    case Symbol::kU: v = prev + (top - prev) / 4.0; break;
    case Symbol::kD: v = prev - (prev - bottom) / 4.0; break;
    case Symbol::kS: v = prev; break;
  }
  return std::clamp(v, bottom, top);
}

std::vector<momel::MomelAnchor> DecodeIntsint(const std::vector<IntsintMark>& marks,
                                              const IntsintParams& params) {
  params.Validate();
  std::vector<momel::MomelAnchor> out;
  if (marks.empty()) return out;
  if (!IsAbsolute(marks.front().symbol)) {
    throw Error(ErrorCode::kFirstMarkRelative,
                std::string("sequence starts with relative tone ") +
                    SymbolChar(marks.front().symbol));
  }
  double prev = params.key;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (!std::isfinite(marks[i].time) || (i > 0 && !(marks[i].time > marks[i - 1].time))) {
      throw Error(ErrorCode::kUnorderedMarks,
                  "mark " + std::to_string(i) + " is not after its predecessor");
    }
    prev = Target(marks[i].symbol, prev, params);
    out.push_back({marks[i].time, prev});
  }
  return out;
}

std::vector<IntsintMark> EncodeIntsint(const std::vector<momel::MomelAnchor>& anchors,
                                       const IntsintParams& params) {
  params.Validate();
  if (anchors.empty()) throw Error(ErrorCode::kEmptyInput, "no anchors to encode");
  std::vector<IntsintMark> out;
  double prev = params.key;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    Symbol best = Symbol::kM;
    double best_target = 0.0;
    double best_err = 0.0;
    bool have = false;
    for (Symbol s : kAllSymbols) {
      if (i == 0 && !IsAbsolute(s)) continue;
      const double t = Target(s, prev, params);
      const double err = std::abs(t - anchors[i].value);
      if (!have || err < best_err) {
        best = s;
        best_target = t;
        best_err = err;
        have = true;
      }
    }
    out.push_back({best, anchors[i].time});
    prev = best_target;
  }
  return out;
}

std::string AccentName(Accent accent) {
  switch (accent) {
    case Accent::kHstarL: return "H*L";
    case Accent::kHstarH: return "H*H";
    case Accent::kHstarM: return "H*M";
    case Accent::kLstar: return "L*";
    case Accent::kHLstar: return "HL*";
    case Accent::kLstarH: return "L*H";
  }
  return "?";
}

Accent ParseAccent(std::string_view name) {
  for (Accent a : {Accent::kHstarL, Accent::kHstarH, Accent::kHstarM, Accent::kLstar,
                   Accent::kHLstar, Accent::kLstarH}) {
    if (AccentName(a) == name) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown ToRI accent '" + std::string(name) + "'");
}

CommunicativeType ParseCommunicativeType(std::string_view name) {
  if (name == "statement") return CommunicativeType::kStatement;
  if (name == "question") return CommunicativeType::kQuestion;
  if (name == "exclamation") return CommunicativeType::kExclamation;
  if (name == "continuative") return CommunicativeType::kContinuative;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown communicative type '" + std::string(name) + "'");
}

Accent AccentForType(CommunicativeType type) {
  switch (type) {
    case CommunicativeType::kStatement: return Accent::kLstar;
    case CommunicativeType::kQuestion: return Accent::kHstarL;
    case CommunicativeType::kExclamation: return Accent::kHLstar;
    case CommunicativeType::kContinuative: break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "continuative has no accent mapping; give the accent explicitly");
}

std::vector<IntsintMark> ToriToIntsint(const ToRIAccent& accent,
                                       const PseudoTimeline& timeline,
                                       const ToriOptions& options) {
  if (!IsAbsolute(options.initial_tone)) {
    throw Error(ErrorCode::kFirstMarkRelative, "initial tone must be T, M or B");
  }
  const auto& words = timeline.words();
  if (accent.nucleus_word_index >= words.size()) {
    throw Error(ErrorCode::kInvalidArgument, "nucleus word index out of range");
  }
  const TimelineWord& nucleus = words[accent.nucleus_word_index];
  if (!nucleus.stressed_vowel_time) {
    throw Error(ErrorCode::kMissingStress,
                "nucleus word '" + nucleus.text + "' has no stressed vowel");
  }
  auto anchor_time = [](const TimelineWord& w) {
    return w.stressed_vowel_time.value_or(w.midpoint());
  };

  std::vector<IntsintMark> marks;
  marks.push_back({options.initial_tone, timeline.start()});
  auto emit = [&marks](Symbol s, double t) {
    if (t > marks.back().time) marks.push_back({s, t});
  };
  for (std::size_t i = 0; i < accent.nucleus_word_index; ++i) {
    emit(Symbol::kS, anchor_time(words[i]));
  }

  const double stress = *nucleus.stressed_vowel_time;
  const std::optional<double> post = nucleus.post_stress_vowel_time;
  auto trailing = [&](Symbol s) {
    if (post) emit(s, *post);
  };
  switch (accent.accent) {
    case Accent::kLstar:
      emit(Symbol::kL, stress);
      break;
    case Accent::kHstarL:
      emit(Symbol::kT, stress);
      trailing(Symbol::kL);
      break;
    case Accent::kHLstar:
      emit(Symbol::kT, nucleus.pre_stress_vowel_time.value_or(0.5 * (nucleus.start + stress)));
      emit(options.exclamation_tb ? Symbol::kB : Symbol::kL, stress);
      break;
    case Accent::kHstarH:
      emit(Symbol::kT, stress);
      trailing(Symbol::kS);
      break;
    case Accent::kHstarM:
      emit(Symbol::kT, stress);
      trailing(Symbol::kM);
      break;
    case Accent::kLstarH:
      emit(Symbol::kL, stress);
      trailing(Symbol::kH);
      break;
  }

  for (std::size_t i = accent.nucleus_word_index + 1; i < words.size(); ++i) {
    emit(Symbol::kB, anchor_time(words[i]));
  }
  return marks;
}

SynthesisResult Synthesize(const std::vector<IntsintMark>& marks,
                           const PseudoTimeline& timeline, const cluster::ClusterModel& model,
                           const IntsintParams& params) {
  if (marks.empty()) throw Error(ErrorCode::kEmptyInput, "no INTSINT marks");
  std::vector<momel::MomelAnchor> anchors = DecodeIntsint(marks, params);
  const double lo = std::min(timeline.start(), anchors.front().time);
  const double hi = std::max(timeline.end(), anchors.back().time);
  momel::MomelSpline spline(std::move(anchors), lo, hi);
  const pitch::NormalizationScope unit{model.norm_mode, 1.0};
  std::vector<patterns::WordPattern> rows =
      patterns::ExtractPatterns(spline, timeline.ToAlignment(), unit, model.n_f0);
  std::vector<cluster::PastaLabel> labels;
  labels.reserve(rows.size());
  for (const auto& row : rows) labels.push_back(cluster::Assign(model, row));
  return {std::move(labels), std::move(rows), std::move(spline)};
}

std::vector<cluster::PastaLabel> SynthesizeMarkup(const std::vector<IntsintMark>& marks,
                                                  const PseudoTimeline& timeline,
                                                  const cluster::ClusterModel& model,
                                                  const IntsintParams& params) {
  return Synthesize(marks, timeline, model, params).labels;
}

std::string MarksToJson(const std::vector<IntsintMark>& marks) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& m : marks) {
    nlohmann::ordered_json e;
    e["sym"] = std::string(1, SymbolChar(m.symbol));
    e["t"] = m.time;
    j.push_back(std::move(e));
  }
  return j.dump();
}

std::vector<IntsintMark> MarksFromJson(const std::string& json) {
  std::vector<IntsintMark> out;
  try {
    const auto j = nlohmann::json::parse(json);
    if (!j.is_array()) throw Error(ErrorCode::kParseError, "INTSINT marks must be an array");
    for (const auto& e : j) {
      out.push_back({ParseSymbol(e.at("sym").get<std::string>()), e.at("t").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("INTSINT JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInvalidArgument) throw;
    throw Error(ErrorCode::kParseError, std::string("INTSINT JSON: ") + e.what());
  }
  return out;
}

}  // namespace pasta::intsint
