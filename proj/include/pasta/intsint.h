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

// INTSINT tone coding on the normalized pitch scale and rule-based synthesis
// of word labels from ToRI pitch accents.
//
// Absolute tones: T = key + range/2, M = key, B = key - range/2.
// Relative tones, from the previous target P:
//   H = (P + T) / 2    L = (P + B) / 2
//   U = P + (T - P)/4  D = P - (P - B)/4
//   S = P
// Every target is clamped to [B, T].

#ifndef PASTA_INTSINT_H_
#define PASTA_INTSINT_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pasta/clustering.h"
#include "pasta/momel.h"
#include "pasta/timeline.h"

namespace pasta::intsint {

enum class Symbol { kT, kM, kB, kH, kL, kU, kD, kS };

// Tie-break precedence of the encoder.
inline constexpr std::array<Symbol, 8> kAllSymbols = {
    Symbol::kT, Symbol::kM, Symbol::kB, Symbol::kH,
    Symbol::kL, Symbol::kU, Symbol::kD, Symbol::kS};

char SymbolChar(Symbol symbol);
Symbol ParseSymbol(std::string_view name);
bool IsAbsolute(Symbol symbol);

struct IntsintMark {
  Symbol symbol = Symbol::kM;
  double time = 0.0;

  bool operator==(const IntsintMark&) const = default;
};

struct IntsintParams {
  double key = 1.0;
  double range = 2.0 / 3.0;

  // Throws InvalidArgument unless key > 0 and 0 < range < 2 * key.
  void Validate() const;
  double top() const { return key + range / 2.0; }
  double bottom() const { return key - range / 2.0; }
};

// Target of `symbol` after previous target `prev`.
double Target(Symbol symbol, double prev, const IntsintParams& params);

std::vector<momel::MomelAnchor> DecodeIntsint(const std::vector<IntsintMark>& marks,
                                              const IntsintParams& params = {});

// Greedy coder: each anchor takes the symbol whose decoded target is nearest,
// ties resolved by kAllSymbols order. The first anchor uses T, M or B.
std::vector<IntsintMark> EncodeIntsint(const std::vector<momel::MomelAnchor>& anchors,
                                       const IntsintParams& params = {});

enum class Accent { kHstarL, kHstarH, kHstarM, kLstar, kHLstar, kLstarH };

std::string AccentName(Accent accent);  // "H*L", "L*", ...
Accent ParseAccent(std::string_view name);

struct ToRIAccent {
  Accent accent = Accent::kLstar;
  std::size_t nucleus_word_index = 0;
};

enum class CommunicativeType { kStatement, kQuestion, kExclamation, kContinuative };

CommunicativeType ParseCommunicativeType(std::string_view name);
// Statement L*, yes-no question H*L, exclamation HL*. Continuative has no
// accent and throws InvalidArgument.
Accent AccentForType(CommunicativeType type);

struct ToriOptions {
  Symbol initial_tone = Symbol::kM;
  // Realize the low of HL* as B instead of L.
  bool exclamation_tb = false;
};

std::vector<IntsintMark> ToriToIntsint(const ToRIAccent& accent,
                                       const PseudoTimeline& timeline,
                                       const ToriOptions& options = {});

struct SynthesisResult {
  std::vector<cluster::PastaLabel> labels;
  std::vector<patterns::WordPattern> patterns;
  momel::MomelSpline spline;
};

// marks -> normalized anchors -> spline over the timeline -> per-word labels.
SynthesisResult Synthesize(const std::vector<IntsintMark>& marks,
                           const PseudoTimeline& timeline, const cluster::ClusterModel& model,
                           const IntsintParams& params = {});

std::vector<cluster::PastaLabel> SynthesizeMarkup(const std::vector<IntsintMark>& marks,
                                                  const PseudoTimeline& timeline,
                                                  const cluster::ClusterModel& model,
                                                  const IntsintParams& params = {});

// [{"sym": "T", "t": 0.24}, ...]
std::string MarksToJson(const std::vector<IntsintMark>& marks);
std::vector<IntsintMark> MarksFromJson(const std::string& json);

}  // namespace pasta::intsint

#endif  // PASTA_INTSINT_H_
