// tests/unit/data_test.cc

// Copyright 2026  The SWCE Workbench Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <map>
#include <fstream>
#include <iterator>
#include <numeric>

#include <gtest/gtest.h>

#include "swce/common/errors.h"
#include "swce/data/corpus.h"
#include "swce/data/manifest.h"
#include "swce/data/split.h"
#include "swce/data/wav.h"
#include "swce/features/framing.h"
#include "swce/features/pitch.h"
#include "testing.h"

namespace swce::data {
namespace {

void put(std::string& b, std::uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

// Hand-assembled canonical 44-byte-header PCM file.
std::string wav_bytes(const std::vector<std::int16_t>& pcm, std::uint16_t channels = 1,
                      std::uint32_t rate = 16000, std::uint16_t bits = 16,
                      std::uint16_t format = 1) {
  std::string b = "RIFF";
  const std::uint32_t data_size = static_cast<std::uint32_t>(pcm.size() * 2);
  put(b, 36 + data_size, 4);
  b += "WAVEfmt ";
  put(b, 16, 4);
  put(b, format, 2);
  put(b, channels, 2);
  put(b, rate, 4);
  put(b, rate * channels * bits / 8, 4);
  put(b, channels * bits / 8, 2);
  put(b, bits, 2);
  b += "data";
  put(b, data_size, 4);
  for (std::int16_t s : pcm) put(b, static_cast<std::uint16_t>(s), 2);
  return b;
}

void expect_format_field(const std::string& bytes, const std::string& field) {
  try {
    decode_wav(bytes);
    FAIL() << "expected FormatError for " << field;
  } catch (const FormatError& e) {
    EXPECT_EQ(std::string(e.what()).rfind(field, 0), 0u) << e.what();
  }
}

TEST(Wav, ScalingAndLength) {
  auto sig = decode_wav(wav_bytes({-32768, 16384, 0, 32767}));
  EXPECT_EQ(sig.samples[0], -1.0);
  EXPECT_EQ(sig.samples[1], 0.5);
  EXPECT_EQ(sig.samples[2], 0.0);
  EXPECT_EQ(sig.samples[3], 32767.0 / 32768.0);
  EXPECT_EQ(decode_wav(wav_bytes(std::vector<std::int16_t>(16000, 3))).samples.size(), 16000u);
}

TEST(Wav, RejectsWrongFormatNamingTheField) {
  expect_format_field(wav_bytes({0, 0}, 2), "channels");
  expect_format_field(wav_bytes({0, 0}, 1, 44100), "sample_rate");
  expect_format_field(wav_bytes({0, 0}, 1, 16000, 16, 3), "audio_format");
  auto b = wav_bytes({0, 0});
  b[0] = 'X';
  expect_format_field(b, "riff");
  b = wav_bytes({0, 0});
  b[8] = 'X';
  expect_format_field(b, "wave");
}

TEST(Wav, TruncationIsCorruption) {
  auto b = wav_bytes({1, 2, 3, 4});
  EXPECT_THROW(decode_wav(b.substr(0, b.size() - 2)), CorruptFileError);
  EXPECT_THROW(decode_wav(b.substr(0, 6)), CorruptFileError);
}

TEST(Wav, EncoderMatchesHandAssembledBytes) {
  features::AudioSignal sig{{-1.0, 0.5, 0.0, 0.25}, 16000};
  EXPECT_EQ(encode_wav(sig), wav_bytes({-32768, 16384, 0, 8192}));
}

TEST(Wav, RoundTripWithinQuantization) {
  auto sig = synthesize_clip(default_profiles()[0], 1.0, 5);
  testing::TempDir dir("wav");
  save_wav(dir.path() / "a.wav", sig);
  auto back = load_wav(dir.path() / "a.wav");
  ASSERT_EQ(back.samples.size(), sig.samples.size());
  for (std::size_t i = 0; i < sig.samples.size(); ++i)
    EXPECT_LE(std::abs(back.samples[i] - sig.samples[i]), 1.0 / 32768.0);
}

TEST(Wav, LoadErrorsCarryPath) {
  testing::TempDir dir("wavbad");
  auto path = dir.path() / "stereo.wav";
  {
    std::ofstream f(path, std::ios::binary);
    f << wav_bytes({0, 0}, 2);
  }
  try {
    load_wav(path);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("stereo.wav"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("channels"), std::string::npos);
  }
}

TEST(Manifest, CsvRoundTrip) {
  CorpusManifest m;
  m.records = {{"a", "wav/a.wav", Label::kAD, Split::kTrain, 6.0},
               {"b", "wav/b.wav", Label::kHC, Split::kTest, 5.5}};
  std::string csv = manifest_csv(m);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,path,label,split,duration_s");
  EXPECT_EQ(parse_manifest_csv(csv), m);
  EXPECT_THROW(parse_label("ad"), FormatError);
  EXPECT_THROW(parse_split("validation"), FormatError);
  EXPECT_THROW(parse_manifest_csv("id,path\n"), FormatError);
  m.records.push_back(m.records[0]);
  EXPECT_THROW(m.validate(), ContractError);
}

CorpusManifest fake_set(const std::string& prefix, ClassCounts counts) {
  CorpusManifest m;
  for (Label l : kLabels)
    for (std::size_t i = 0; i < counts[label_index(l)]; ++i) {
      std::string id = prefix + std::string(label_name(l)) + std::to_string(i);
      m.records.push_back({id, "wav/" + id + ".wav", l, Split::kTrain, 6.0});
    }
  return m;
}

TEST(Split, PaperCounts) {
  auto m = split_corpus(fake_set("L", kLargeSetCounts), fake_set("S", kSmallSetCounts), 7);
  EXPECT_EQ(m.in_split(Split::kDev).size(), 56u);
  EXPECT_EQ(m.in_split(Split::kTrain).size(), 224u);
  EXPECT_EQ(m.in_split(Split::kTest).size(), 119u);
  for (const auto& r : m.in_split(Split::kTest)) EXPECT_EQ(r.id[0], 'S');
}

TEST(Split, StratifiedWithinOneClip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto m = split_corpus(fake_set("L", kLargeSetCounts), fake_set("S", kSmallSetCounts), seed);
    std::map<Label, std::size_t> dev;
    for (const auto& r : m.in_split(Split::kDev)) ++dev[r.label];
    for (Label l : kLabels) {
      double expected = 56.0 * kLargeSetCounts[label_index(l)] / 280.0;
      EXPECT_LE(std::abs(static_cast<double>(dev[l]) - expected), 1.0);
    }
  }
  EXPECT_EQ(dev_quota({79, 93, 108}), (std::array<std::size_t, 3>{16, 19, 21}));
}

TEST(Split, SeededAndDisjoint) {
  auto large = fake_set("L", {10, 10, 10});
  auto small = fake_set("S", {3, 3, 3});
  EXPECT_EQ(split_corpus(large, small, 4), split_corpus(large, small, 4));
  EXPECT_NE(split_corpus(large, small, 4), split_corpus(large, small, 5));
  EXPECT_THROW(split_corpus(large, fake_set("L", {3, 3, 3}), 1), ContractError);
  EXPECT_THROW(split_corpus(fake_set("L", {10, 0, 10}), small, 1), ContractError);
}

TEST(Corpus, ProfilesDifferInAtLeastTwoParameters) {
  auto p = default_profiles();
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) {
      int differ = 0;
      differ += p[a].f0_min_hz != p[b].f0_min_hz || p[a].f0_max_hz != p[b].f0_max_hz;
      differ += p[a].pause_fraction != p[b].pause_fraction;
      differ += p[a].formant_hz != p[b].formant_hz;
      differ += p[a].amplitude_jitter != p[b].amplitude_jitter;
      EXPECT_GE(differ, 2);
    }
}

TEST(Corpus, SameSeedSameBytes) {
  CorpusSpec spec{.counts = {1, 1, 1}, .clip_seconds = 1.0, .seed = 42};
  testing::TempDir a("ca"), b("cb");
  auto ma = generate_corpus(spec, a.path());
  auto mb = generate_corpus(spec, b.path());
  EXPECT_EQ(ma, mb);
  for (const auto& r : ma.records) {
    std::ifstream fa(a.path() / r.path, std::ios::binary), fb(b.path() / r.path, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(fa)), {});
    std::string sb((std::istreambuf_iterator<char>(fb)), {});
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, sb);
  }
  EXPECT_NO_THROW(ma.validate(a.path()));
  EXPECT_NE(synthesize_clip(spec.profiles[0], 1.0, 1).samples,
            synthesize_clip(spec.profiles[0], 1.0, 2).samples);
}

TEST(Corpus, EstimatedF0StaysInProfileRange) {
  for (const auto& profile : default_profiles()) {
    std::size_t voiced = 0, inside = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      auto sig = synthesize_clip(profile, 6.0, 1000 + seed);
      for (auto frame : features::frame_signal(sig)) {
        double f0 = features::estimate_f0(frame);
        if (f0 == 0.0) continue;
        ++voiced;
        inside += f0 >= profile.f0_min_hz && f0 <= profile.f0_max_hz;
      }
    }
    ASSERT_GT(voiced, 0u);
    EXPECT_GE(static_cast<double>(inside) / voiced, 0.9) << label_name(profile.label);
  }
}

TEST(Corpus, SilenceFractionMatchesProfile) {
  for (const auto& profile : default_profiles()) {
    double total = 0.0;
    const int clips = 8;
    for (int seed = 0; seed < clips; ++seed) {
      auto sig = synthesize_clip(profile, 6.0, 500 + seed);
      std::vector<double> rms;
      for (std::size_t at = 0; at + kChunkSamples <= sig.samples.size(); at += kChunkSamples) {
        double e = 0.0;
        for (std::size_t i = at; i < at + kChunkSamples; ++i) e += sig.samples[i] * sig.samples[i];
        rms.push_back(std::sqrt(e / kChunkSamples));
      }
      const double loudest = *std::max_element(rms.begin(), rms.end());
      auto silent = std::count_if(rms.begin(), rms.end(),
                                  [&](double r) { return r < 0.3 * loudest; });
      total += static_cast<double>(silent) / rms.size();
    }
    EXPECT_NEAR(total / clips, profile.pause_fraction, 0.05) << label_name(profile.label);
  }
}

double mean_f0(const features::AudioSignal& sig) {
  double sum = 0.0;
  int n = 0;
  for (auto frame : features::frame_signal(sig)) {
    double f0 = features::estimate_f0(frame);
    if (f0 > 0.0) sum += f0, ++n;
  }
  return n ? sum / n : 0.0;
}

TEST(Corpus, MeanF0AloneSeparatesClasses) {
  CorpusSpec train{.counts = {30, 30, 30}, .seed = 1};
  CorpusSpec test{.counts = {35, 39, 45}, .seed = 2, .split = Split::kTest};
  std::array<double, 3> centroid{};
  std::array<int, 3> count{};
  for (const auto& c : generate_clips(train)) {
    centroid[label_index(c.record.label)] += mean_f0(c.signal);
    ++count[label_index(c.record.label)];
  }
  for (int k = 0; k < 3; ++k) centroid[k] /= count[k];
  std::size_t correct = 0, total = 0;
  for (const auto& c : generate_clips(test)) {
    double f = mean_f0(c.signal);
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k)
      if (std::abs(f - centroid[k]) < std::abs(f - centroid[best])) best = k;
    correct += best == label_index(c.record.label);
    ++total;
  }
  EXPECT_GT(static_cast<double>(correct) / total, 0.8);
}

TEST(Corpus, SpecValidation) {
  CorpusSpec spec{.counts = {1, 0, 1}};
  EXPECT_THROW(spec.validate(), ContractError);
  EXPECT_NE(clip_seed(1, Label::kAD, 0), clip_seed(1, Label::kMCI, 0));
  EXPECT_NE(clip_seed(1, Label::kAD, 0), clip_seed(1, Label::kAD, 1));
}

}  // namespace
}  // namespace swce::data
