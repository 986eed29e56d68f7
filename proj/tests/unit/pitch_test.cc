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

#include <cmath>
#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "pasta/pitch.h"
#include "test_util.h"

using Catch::Matchers::WithinAbs;
using namespace pasta;
using namespace pasta::pitch;
using pasta::testing::CodeOf;

namespace {

F0Contour Voiced(const std::vector<double>& f0, double step = 0.01, double lo = kDefaultF0Min,
                 double hi = kDefaultF0Max) {
  std::vector<F0Frame> frames;
  for (std::size_t i = 0; i < f0.size(); ++i) {
    frames.push_back({static_cast<double>(i) * step, f0[i], f0[i] > 0.0});
  }
  return F0Contour(frames, step, lo, hi);
}

}  // namespace

TEST_CASE("csv rows map to frames") {
  const auto c = ParseF0("0.00,120,1\n0.01,122,1\n0.02,0,0\n", F0Format::kCsv);
  REQUIRE(c.size() == 3);
  CHECK(c.voiced_count() == 2);
  CHECK_THAT(c.frame_step(), WithinAbs(0.01, 1e-12));
  CHECK(c.frames()[1].f0 == 122.0);
  CHECK_FALSE(c.frames()[2].voiced);
}

TEST_CASE("csv header and comments are skipped") {
  const auto c = ParseF0("# tracker output\ntime_s,f0_hz,voiced\n0,100,1\n0.01,101,1\n",
                         F0Format::kCsv);
  CHECK(c.size() == 2);
}

TEST_CASE("two-column text treats zero as unvoiced") {
  const auto c = ParseF0("0.00 110\n0.01 0\n0.02 112\n", F0Format::kTwoColumnText);
  CHECK(c.voiced_count() == 2);
  CHECK(c.frames()[1].f0 == 0.0);
}

TEST_CASE("declared step mismatch is NonUniformStep") {
  LoadOptions opt;
  opt.frame_step = 0.01;
  CHECK(CodeOf([&] { ParseF0("0.00,120\n0.02,122\n", F0Format::kCsv, opt); }) ==
        ErrorCode::kNonUniformStep);
}

TEST_CASE("irregular deltas are NonUniformStep") {
  CHECK(CodeOf([] { ParseF0("0,120\n0.01,120\n0.03,120\n", F0Format::kCsv); }) ==
        ErrorCode::kNonUniformStep);
}

TEST_CASE("empty input is EmptyContour") {
  CHECK(CodeOf([] { ParseF0("", F0Format::kCsv); }) == ErrorCode::kEmptyContour);
  CHECK(CodeOf([] { ParseF0("time_s,f0_hz\n", F0Format::kCsv); }) ==
        ErrorCode::kEmptyContour);
}

TEST_CASE("bad rows are MalformedRow") {
  CHECK(CodeOf([] { ParseF0("0,120,1,5\n", F0Format::kCsv); }) == ErrorCode::kMalformedRow);
  CHECK(CodeOf([] { ParseF0("0,120\n0.01,abc\n", F0Format::kCsv); }) ==
        ErrorCode::kMalformedRow);
  CHECK(CodeOf([] { ParseF0("0 1 2 3\n", F0Format::kTwoColumnText); }) ==
        ErrorCode::kMalformedRow);
}

TEST_CASE("out-of-range frames become unvoiced") {
  const auto c = Voiced({30.0, 120.0, 900.0});
  CHECK(c.voiced_count() == 1);
  CHECK(c.frames()[0].f0 == 0.0);
  CHECK(c.frames()[2].f0 == 0.0);
}

TEST_CASE("voiced flag zero overrides a positive f0") {
  const auto c = ParseF0("0,120,0\n0.01,120,1\n", F0Format::kCsv);
  CHECK(c.voiced_count() == 1);
}

TEST_CASE("csv serialization round-trips bit-identically") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> f0(60.0, 500.0);
  std::vector<double> values;
  for (int i = 0; i < 200; ++i) values.push_back(i % 17 == 0 ? 0.0 : f0(rng));
  const auto c = Voiced(values, 0.005);
  const std::string text = SerializeF0Csv(c);
  const auto back = ParseF0(text, F0Format::kCsv);
  CHECK(back == c);
  CHECK(SerializeF0Csv(back) == text);
}

TEST_CASE("mean over voiced frames") {
  CHECK(ComputeMeanF0(std::vector<F0Contour>{Voiced({100.0, 0.0, 140.0})}) == 120.0);
  CHECK(ComputeMeanF0(std::vector<F0Contour>{Voiced({100.0}), Voiced({100.0})}) == 100.0);
  CHECK(CodeOf([] { ComputeMeanF0(std::vector<F0Contour>{Voiced({0.0, 0.0})}); }) ==
        ErrorCode::kNoVoicedFrames);
}

TEST_CASE("normalization divides voiced frames") {
  const auto n = NormalizeF0(Voiced({100.0, 140.0}), {NormMode::kPhrase, 120.0});
  CHECK_THAT(n.frames()[0].f0, WithinAbs(100.0 / 120.0, 1e-15));
  CHECK_THAT(n.frames()[1].f0, WithinAbs(140.0 / 120.0, 1e-15));
  const auto flat = NormalizeF0(Voiced({200.0, 200.0}), {NormMode::kPhrase, 200.0});
  CHECK(flat.frames()[0].f0 == 1.0);
  CHECK(flat.frames()[1].f0 == 1.0);
  CHECK(CodeOf([] { NormalizeF0(Voiced({100.0}), {NormMode::kPhrase, 0.0}); }) ==
        ErrorCode::kZeroMean);
}

TEST_CASE("normalization keeps voicing and gives a unit phrase mean") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> f0(70.0, 400.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values;
    for (int i = 0; i < 150; ++i) values.push_back(i % 7 == 3 ? 0.0 : f0(rng));
    const auto c = Voiced(values);
    const double m = ComputeMeanF0(std::vector<F0Contour>{c});
    const auto n = NormalizeF0(c, {NormMode::kPhrase, m});
    CHECK(n.voiced_count() == c.voiced_count());
    CHECK_THAT(ComputeMeanF0(std::vector<F0Contour>{n}), WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("normalization is scale-equivariant") {
  const std::vector<double> base = {110.0, 0.0, 130.0, 150.0, 90.0};
  const double c = 1.7;
  std::vector<double> scaled;
  for (double v : base) scaled.push_back(v * c);
  const auto a = NormalizeF0(Voiced(base), {NormMode::kSpeaker, 120.0});
  const auto b = NormalizeF0(Voiced(scaled), {NormMode::kSpeaker, 120.0 * c});
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK_THAT(a.frames()[i].f0, WithinAbs(b.frames()[i].f0, 1e-9));
    CHECK(a.frames()[i].voiced == b.frames()[i].voiced);
  }
}

TEST_CASE("decimation factor 1 is the identity") {
  const auto c = Voiced({100.0, 0.0, 120.0, 130.0});
  CHECK(ResampleWithLowpass(c, 1) == c);
}

TEST_CASE("decimation preserves a constant") {
  const auto r = ResampleWithLowpass(Voiced({100.0, 100.0, 100.0, 100.0}), 2);
  REQUIRE(r.size() == 2);
  CHECK(r.frames()[0].f0 == 100.0);
  CHECK(r.frames()[1].f0 == 100.0);
  CHECK_THAT(r.frame_step(), WithinAbs(0.02, 1e-15));
}

TEST_CASE("decimation averages alternating values") {
  // Zero is unvoiced on the Hz scale, so the alternating example runs on
  // values 1 and 3 with bounds that admit them.
  const auto r = ResampleWithLowpass(Voiced({1.0, 3.0, 1.0, 3.0, 1.0, 3.0}, 0.01, 0.5, 10.0), 2);
  REQUIRE(r.size() == 3);
  for (const auto& f : r.frames()) CHECK_THAT(f.f0, WithinAbs(2.0, 1e-9));
}

TEST_CASE("decimation never mixes unvoiced frames into voiced values") {
  const auto r = ResampleWithLowpass(Voiced({100.0, 0.0, 0.0, 200.0, 150.0, 250.0}), 2);
  REQUIRE(r.size() == 3);
  CHECK(r.frames()[0].f0 == 100.0);
  CHECK_FALSE(r.frames()[1].voiced);
  CHECK(r.frames()[2].f0 == 200.0);
  CHECK(CodeOf([] { ResampleWithLowpass(Voiced({100.0}), 0); }) == ErrorCode::kInvalidFactor);
}

TEST_CASE("norm mode names round-trip") {
  CHECK(ParseNormMode(NormModeName(NormMode::kPhrase)) == NormMode::kPhrase);
  CHECK(ParseNormMode(NormModeName(NormMode::kSpeaker)) == NormMode::kSpeaker);
  CHECK(CodeOf([] { ParseNormMode("global"); }) == ErrorCode::kInvalidArgument);
}
