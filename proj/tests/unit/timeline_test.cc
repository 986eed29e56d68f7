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

#include <vector>

#include <catch_amalgamated.hpp>

#include "pasta/timeline.h"
#include "test_util.h"

using Catch::Matchers::WithinAbs;
using namespace pasta;
using namespace pasta::intsint;
using pasta::testing::CodeOf;

namespace {

PlanWord Word(const std::string& text) { return PlanWord{text, {}, {}, {}, {}}; }

}  // namespace

TEST_CASE("word spans are contiguous multiples of the phone length") {
  const PseudoTimeline tl({Word("мама"), Word("мыла"), Word("раму")}, 0.1);
  REQUIRE(tl.size() == 3);
  double t = 0.0;
  for (const auto& w : tl.words()) {
    CHECK(w.phone_count == 4);
    CHECK_THAT(w.start, WithinAbs(t, 1e-12));
    CHECK_THAT(w.end - w.start, WithinAbs(0.4, 1e-12));
    t = w.end;
  }
  CHECK(tl.start() == 0.0);
  CHECK_THAT(tl.end(), WithinAbs(1.2, 1e-12));
  CHECK(tl.mean_phone_s() == 0.1);
}

TEST_CASE("stress from a marker, an ordinal or a single vowel") {
  const PseudoTimeline tl({Word("мол+око"), Word("да"), PlanWord{"мама", {}, 1, {}, {}}});
  const auto& w = tl.words();
  const double p = kDefaultMeanPhone;
  CHECK(w[0].text == "молоко");
  CHECK_THAT(*w[0].stressed_vowel_time, WithinAbs(3.5 * p, 1e-12));
  CHECK_THAT(*w[0].pre_stress_vowel_time, WithinAbs(1.5 * p, 1e-12));
  CHECK_THAT(*w[0].post_stress_vowel_time, WithinAbs(5.5 * p, 1e-12));
  CHECK_THAT(*w[1].stressed_vowel_time, WithinAbs(7.5 * p, 1e-12));
  CHECK_FALSE(w[1].post_stress_vowel_time.has_value());
  CHECK_THAT(*w[2].stressed_vowel_time, WithinAbs(11.5 * p, 1e-12));
}

TEST_CASE("ambiguous stress stays unset") {
  const PseudoTimeline tl({Word("мама")});
  CHECK_FALSE(tl.words()[0].stressed_vowel_time.has_value());
}

TEST_CASE("explicit phone counts spread the letters") {
  const auto w = ResolvePlanWord(PlanWord{"д+а", 4, {}, {}, {}});
  CHECK(w.text == "да");
  CHECK(*w.phone_count == 4);
  REQUIRE(w.stress_phone.has_value());
  CHECK(w.vowel_phones[*w.stress_phone]);
}

TEST_CASE("timeline guards") {
  CHECK(CodeOf([] { PseudoTimeline({}); }) == ErrorCode::kEmptyInput);
  CHECK(CodeOf([] { PseudoTimeline({Word("да")}, 0.0); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { ResolvePlanWord(Word("...")); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { ResolvePlanWord(PlanWord{"мама", {}, 2, {}, {}}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { ResolvePlanWord(PlanWord{"мама", {}, {}, 9, {}}); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("plan from an alignment keeps phones and stress") {
  align::UtteranceAlignment a;
  a.words.push_back({"да", 0.0, 0.3, {{"d", 0.0, 0.1}, {"a", 0.1, 0.3}}, 0.2});
  a.words.push_back({"мама", 0.3, 0.7, {}, 0.4});
  const auto plan = PlanFromAlignment(a);
  REQUIRE(plan.size() == 2);
  CHECK(plan[0].vowel_phones == std::vector<bool>{false, true});
  CHECK(plan[0].stress_phone == 1);
  CHECK(plan[1].stress_phone == 1);
  const PseudoTimeline tl(plan);
  CHECK(tl.words()[1].stressed_vowel_time.has_value());
}

TEST_CASE("timeline converts to a valid alignment") {
  const PseudoTimeline tl({Word("ты"), Word("в+идел"), Word("кот+а")});
  const auto a = align::Validate(tl.ToAlignment());
  REQUIRE(a.words.size() == 3);
  CHECK(a.text == "ты видел кота");
  CHECK(a.words[1].stressed_vowel_time == tl.words()[1].stressed_vowel_time);
}
