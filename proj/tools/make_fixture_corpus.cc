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

// Writes the synthetic 12-utterance test corpus: two speakers, contours
// sampled from hand-placed Momel anchors, word alignments as JSON or
// TextGrid.
//
//   make_fixture_corpus <out_dir>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pasta/momel.h"

namespace {

namespace fs = std::filesystem;
using pasta::momel::MomelAnchor;
using pasta::momel::MomelSpline;

enum class Kind { kStatement, kQuestion, kContinuative };

struct Utterance {
  const char* id;
  Kind kind;
  std::vector<std::string> words;
  const char* punct;  // sentence-final mark kept in the text
};

const std::vector<Utterance>& Corpus() {
  static const std::vector<Utterance> kCorpus = {
      {"utt01", Kind::kStatement, {"мама", "мыла", "раму"}, "."},
      {"utt02", Kind::kQuestion, {"ты", "видел", "кота"}, "?"},
      {"utt03", Kind::kContinuative, {"когда", "мы", "пришли"}, ","},
      {"utt04", Kind::kStatement, {"он", "читает", "книгу", "дома"}, "."},
      {"utt05", Kind::kQuestion, {"она", "придёт", "завтра"}, "?"},
      {"utt06", Kind::kStatement, {"мы", "долго", "ждали", "поезда"}, "."},
      {"utt07", Kind::kContinuative, {"если", "будет", "время"}, ","},
      {"utt08", Kind::kStatement, {"дети", "играют", "во", "дворе"}, "."},
      {"utt09", Kind::kQuestion, {"вы", "знаете", "этот", "город"}, "?"},
      {"utt10", Kind::kStatement, {"солнце", "село", "за", "лесом"}, "."},
      {"utt11", Kind::kContinuative, {"пока", "он", "спал"}, ","},
      {"utt12", Kind::kStatement, {"завтра", "будет", "дождь"}, "."},
  };
  return kCorpus;
}

constexpr double kLead = 0.12;
constexpr double kStep = 0.01;

std::size_t Letters(const std::string& w) {
  std::size_t n = 0;
  for (unsigned char c : w) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

double Round3(double v) { return std::round(v * 1000.0) / 1000.0; }

struct Interval {
  std::string text;
  double start;
  double end;
};

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

void Write(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << s;
}

std::string JsonEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string WordJson(const std::vector<Interval>& words, const std::string& text,
                     const Interval* punct) {
  std::string s = "{\"text\": \"" + JsonEscape(text) + "\", \"words\": [\n";
  std::vector<Interval> all = words;
  if (punct) all.push_back(*punct);
  for (std::size_t i = 0; i < all.size(); ++i) {
    s += "  {\"word\": \"" + JsonEscape(all[i].text) + "\", \"start\": " +
         Fmt("%.3f", all[i].start) + ", \"end\": " + Fmt("%.3f", all[i].end) + "}";
    s += i + 1 < all.size() ? ",\n" : "\n";
  }
  return s + "]}\n";
}

void TierIntervals(std::string& s, const char* name, const std::vector<Interval>& items,
                   double xmax, int index) {
  std::vector<Interval> full;
  double t = 0.0;
  for (const auto& it : items) {
    if (it.start > t + 1e-9) full.push_back({"", t, it.start});
    full.push_back(it);
    t = it.end;
  }
  if (xmax > t + 1e-9) full.push_back({"", t, xmax});
  s += "    item [" + std::to_string(index) + "]:\n";
  s += "        class = \"IntervalTier\"\n";
  s += std::string("        name = \"") + name + "\"\n";
  s += "        xmin = 0\n        xmax = " + Fmt("%.3f", xmax) + "\n";
  s += "        intervals: size = " + std::to_string(full.size()) + "\n";
  for (std::size_t i = 0; i < full.size(); ++i) {
    s += "        intervals [" + std::to_string(i + 1) + "]:\n";
    s += "            xmin = " + Fmt("%.3f", full[i].start) + "\n";
    s += "            xmax = " + Fmt("%.3f", full[i].end) + "\n";
    s += "            text = \"" + full[i].text + "\"\n";
  }
}

std::string TextGrid(const std::vector<Interval>& words, double xmax) {
  // Phones split every word evenly by letter.
  std::vector<Interval> phones;
  for (const auto& w : words) {
    std::vector<std::string> letters;
    for (std::size_t i = 0; i < w.text.size();) {
      std::size_t len = 1;
      while (i + len < w.text.size() &&
             (static_cast<unsigned char>(w.text[i + len]) & 0xC0) == 0x80) {
        ++len;
      }
      letters.push_back(w.text.substr(i, len));
      i += len;
    }
    const double d = (w.end - w.start) / static_cast<double>(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const double a = i == 0 ? w.start : Round3(w.start + d * static_cast<double>(i));
      const double b =
          i + 1 == letters.size() ? w.end : Round3(w.start + d * static_cast<double>(i + 1));
      phones.push_back({letters[i], a, b});
    }
  }
  std::string s = "File type = \"ooTextFile\"\nObject class = \"TextGrid\"\n\n";
  s += "xmin = 0\nxmax = " + Fmt("%.3f", xmax) + "\ntiers? <exists>\nsize = 2\nitem []:\n";
  TierIntervals(s, "words", words, xmax, 1);
  TierIntervals(s, "phones", phones, xmax, 2);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixture_corpus <out_dir>\n";
    return 1;
  }
  const fs::path root(argv[1]);
  std::string manifest = "utterance_id,speaker_id,f0_path,alignment_path,text\n";

  for (std::size_t u = 0; u < Corpus().size(); ++u) {
    const Utterance& utt = Corpus()[u];
    const bool speaker_a = u % 2 == 0;
    const double base = speaker_a ? 110.0 : 210.0;
    const double wobble = 0.03 * std::sin(1.7 * static_cast<double>(u + 1));

    std::vector<Interval> words;
    double t = kLead;
    for (std::size_t i = 0; i < utt.words.size(); ++i) {
      const double dur = std::clamp(0.07 * static_cast<double>(Letters(utt.words[i])) + 0.14,
                                    0.32, 0.68);
      words.push_back({utt.words[i], Round3(t), Round3(t + dur)});
      // Short pauses after some words leave unvoiced gaps.
      t += dur + ((i + u) % 3 == 0 ? 0.09 : 0.0);
    }
    const double total = Round3(t + kLead);

    std::vector<MomelAnchor> anchors;
    const std::size_t n = words.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double decl = 1.0 - 0.04 * static_cast<double>(i);
      const double bump = (i % 2 == 0 ? 1.0 : -1.0) * (0.04 + wobble);
      anchors.push_back({0.5 * (words[i].start + words[i].end), base * decl * (1.0 + bump)});
    }
    const Interval& last = words.back();
    const double decl = 1.0 - 0.04 * static_cast<double>(n - 1);
    const double len = last.end - last.start;
    switch (utt.kind) {
      case Kind::kStatement:
        anchors.push_back({last.start + 0.06, base * decl * 1.08});
        anchors.push_back({last.start + 0.06 + std::max(0.2, 0.6 * len), base * decl * 0.72});
        break;
      case Kind::kQuestion:
        anchors.push_back({last.start + 0.04, base * decl});
        anchors.push_back({last.start + 0.5 * len, base * 1.45});
        anchors.push_back({last.end - 0.02, base * decl * 0.92});
        break;
      case Kind::kContinuative:
        anchors.push_back({last.start + 0.04, base * decl * 0.95});
        anchors.push_back({last.end - 0.02, base * 1.35});
        break;
    }
    const MomelSpline spline(anchors, 0.0, total);

    const bool csv = u % 3 != 1;
    std::string f0 = csv ? "time_s,f0_hz,voiced\n" : "";
    const auto frames = static_cast<std::size_t>(std::llround(total / kStep)) + 1;
    for (std::size_t j = 0; j < frames; ++j) {
      const double ft = static_cast<double>(j) * kStep;
      bool voiced = false;
      for (const auto& w : words) voiced = voiced || (ft >= w.start && ft <= w.end);
      const double v = voiced ? spline.Eval(ft) : 0.0;
      if (csv) {
        f0 += Fmt("%.2f", ft) + "," + Fmt("%.2f", v) + "," + (voiced ? "1" : "0") + "\n";
      } else {
        f0 += Fmt("%.2f", ft) + " " + Fmt("%.2f", v) + "\n";
      }
    }
    const std::string f0_rel = std::string("f0/") + utt.id + (csv ? ".csv" : ".txt");
    Write(root / f0_rel, f0);

    std::string text;
    for (const auto& w : utt.words) text += (text.empty() ? "" : " ") + w;
    text += utt.punct;

    const bool json = (u / 2) % 2 == 0;
    const std::string al_rel =
        std::string("align/") + utt.id + (json ? ".json" : ".TextGrid");
    if (json) {
      const Interval punct{utt.punct, last.end, Round3(last.end + 0.02)};
      Write(root / al_rel, WordJson(words, text, &punct));
    } else {
      Write(root / al_rel, TextGrid(words, total));
    }

    const std::string quoted = text.find(',') != std::string::npos ? "\"" + text + "\"" : text;
    manifest += std::string(utt.id) + "," + (speaker_a ? "spk_a" : "spk_b") + "," + f0_rel +
                "," + al_rel + "," + quoted + "\n";
  }
  Write(root / "manifest.csv", manifest);
  return 0;
}
