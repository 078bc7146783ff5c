// core/src/data/corpus.cc

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

#include "swce/data/corpus.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "swce/common/errors.h"
#include "swce/data/wav.h"

namespace swce::data {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr std::size_t kF0BlockSamples = 160;
constexpr double kMaxHarmonicHz = 7000.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double formant_gain(const SynthClassProfile& p, double scale, double hz) {
  double g = 0.02;
  for (double center : p.formant_hz) {
    const double d = (hz - scale * center) / p.formant_bandwidth_hz;
    g += 1.0 / (1.0 + d * d);
  }
  return g;
}

}  // namespace

ClassProfiles default_profiles() {
  ClassProfiles p;
  p[label_index(Label::kAD)] = {Label::kAD, 95.0, 145.0, 0.35, {520.0, 1050.0, 2350.0}, 150.0, 0.12, 0.15};
  p[label_index(Label::kMCI)] = {Label::kMCI, 135.0, 185.0, 0.27, {580.0, 1120.0, 2450.0}, 150.0, 0.12, 0.10};
  p[label_index(Label::kHC)] = {Label::kHC, 175.0, 235.0, 0.20, {640.0, 1190.0, 2550.0}, 150.0, 0.12, 0.06};
  return p;
}

std::uint64_t clip_seed(std::uint64_t corpus_seed, Label label, std::size_t index) {
  return splitmix64(splitmix64(corpus_seed ^ (label_index(label) + 1) * 0x51ed27ULL) + index);
}

features::AudioSignal synthesize_clip(const SynthClassProfile& profile, double seconds,
                                      std::uint64_t seed) {
  if (!(seconds > 0.0)) throw ContractError("synthesize_clip: duration must be positive");
  if (!(profile.f0_min_hz > 0.0 && profile.f0_max_hz > profile.f0_min_hz))
    throw ContractError("synthesize_clip: invalid F0 range");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto n = static_cast<std::size_t>(std::llround(seconds * features::kSampleRate));
  std::vector<double> voice(n, 0.0);

  const double lo = profile.f0_min_hz, hi = profile.f0_max_hz;
  const double step_hz = 0.02 * (hi - lo);
  double f0 = lo + (hi - lo) * unit(rng);
  const double tract = 1.0 + profile.formant_spread * (2.0 * unit(rng) - 1.0);
  std::complex<double> phasor(1.0, 0.0);
  std::vector<double> gains;
  for (std::size_t block = 0; block * kF0BlockSamples < n; ++block) {
    f0 += step_hz * gauss(rng);
    while (f0 < lo || f0 > hi) f0 = f0 < lo ? 2 * lo - f0 : 2 * hi - f0;
    const auto harmonics = static_cast<std::size_t>(kMaxHarmonicHz / f0);
    gains.resize(harmonics);
    for (std::size_t h = 1; h <= harmonics; ++h)
      gains[h - 1] = formant_gain(profile, tract, h * f0) / static_cast<double>(h);
    const std::complex<double> rotate = std::polar(1.0, kTwoPi * f0 / features::kSampleRate);
    const std::size_t end = std::min(n, (block + 1) * kF0BlockSamples);
    for (std::size_t i = block * kF0BlockSamples; i < end; ++i) {
      std::complex<double> z = phasor;
      double s = 0.0;
      for (std::size_t h = 0; h < harmonics; ++h) {
        s += gains[h] * z.imag();
        z *= phasor;
      }
      voice[i] = s;
      phasor *= rotate;
    }
    phasor /= std::abs(phasor);
  }

  const std::size_t chunks = (n + kChunkSamples - 1) / kChunkSamples;
  const auto silent = static_cast<std::size_t>(std::llround(profile.pause_fraction * chunks));
  std::vector<std::size_t> order(chunks);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<double> chunk_gain(chunks);
  for (double& g : chunk_gain)
    g = std::max(0.2, 1.0 + profile.amplitude_jitter * gauss(rng));
  for (std::size_t i = 0; i < silent && i < chunks; ++i) chunk_gain[order[i]] = 0.0;

  double energy = 0.0;
  std::size_t voiced = 0;
  for (std::size_t i = 0; i < n; ++i) {
    voice[i] *= chunk_gain[i / kChunkSamples];
    if (chunk_gain[i / kChunkSamples] > 0.0) {
      energy += voice[i] * voice[i];
      ++voiced;
    }
  }
  double peak = 0.0;
  for (double v : voice) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 0.5 / peak : 1.0;
  const double rms = voiced > 0 ? scale * std::sqrt(energy / voiced) : 0.1;
  const double noise = 0.1 * rms;

  features::AudioSignal out;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.samples[i] = std::clamp(scale * voice[i] + noise * gauss(rng), -1.0, 1.0);
  return out;
}

void CorpusSpec::validate() const {
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] == 0)
      throw ContractError(fmt::format("corpus: class {} needs at least one clip",
                                      label_name(kLabels[c])));
  if (!(clip_seconds > 0.0)) throw ContractError("corpus: clip length must be positive");
  for (std::size_t c = 0; c < profiles.size(); ++c)
    if (profiles[c].label != kLabels[c])
      throw ContractError("corpus: profiles must be ordered AD, MCI, HC");
}

namespace {

template <typename Fn>
void for_each_clip(const CorpusSpec& spec, Fn&& fn) {
  spec.validate();
  for (Label label : kLabels) {
    const std::size_t c = label_index(label);
    for (std::size_t i = 0; i < spec.counts[c]; ++i) {
      GeneratedClip clip;
      clip.record.id = fmt::format("{}-{}-{:03d}", spec.id_prefix, label_name(label), i);
      clip.record.path = "wav/" + clip.record.id + ".wav";
      clip.record.label = label;
      clip.record.split = spec.split;
      clip.signal = synthesize_clip(spec.profiles[c], spec.clip_seconds,
                                    clip_seed(spec.seed, label, i));
      clip.record.duration_s = clip.signal.duration_seconds();
      fn(std::move(clip));
    }
  }
}

}  // namespace

std::vector<GeneratedClip> generate_clips(const CorpusSpec& spec) {
  std::vector<GeneratedClip> clips;
  for_each_clip(spec, [&](GeneratedClip clip) { clips.push_back(std::move(clip)); });
  return clips;
}

CorpusManifest generate_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir / "wav");
  CorpusManifest manifest;
  for_each_clip(spec, [&](GeneratedClip clip) {
    save_wav(out_dir / clip.record.path, clip.signal);
    manifest.records.push_back(std::move(clip.record));
  });
  return manifest;
}

}  // namespace swce::data
