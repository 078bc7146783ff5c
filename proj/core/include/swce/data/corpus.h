// core/include/swce/data/corpus.h

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

#ifndef SWCE_DATA_CORPUS_H_
#define SWCE_DATA_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "swce/data/manifest.h"
#include "swce/features/audio.h"

namespace swce::data {

// Generative parameters of one synthetic class.
struct SynthClassProfile {
  Label label = Label::kAD;
  double f0_min_hz = 100.0;
  double f0_max_hz = 140.0;
  // Share of 250 ms chunks replaced by silence.
  double pause_fraction = 0.3;
  std::array<double, 3> formant_hz = {500.0, 1000.0, 2300.0};
  double formant_bandwidth_hz = 150.0;
  // Per-clip formant scale drawn from U(1 - spread, 1 + spread), a stand-in
  // for speaker vocal-tract length.
  double formant_spread = 0.1;
  // Relative standard deviation of the per-chunk loudness.
  double amplitude_jitter = 0.1;
};

// Indexed by label_index(): AD, MCI, HC.
using ClassProfiles = std::array<SynthClassProfile, 3>;
using ClassCounts = std::array<std::size_t, 3>;

ClassProfiles default_profiles();
inline constexpr ClassCounts kLargeSetCounts = {79, 93, 108};
inline constexpr ClassCounts kSmallSetCounts = {35, 39, 45};

inline constexpr std::size_t kChunkSamples = 4000;

// Harmonic source whose F0 random-walks inside the profile range (reflected
// at the edges), colored by Lorentzian formant bands (scaled per clip), with
// whole 250 ms
// chunks silenced (round(pause_fraction * chunks) of them), per-chunk loudness
// jitter, and Gaussian noise 20 dB below the voiced RMS. Deterministic in
// `seed`.
features::AudioSignal synthesize_clip(const SynthClassProfile& profile, double seconds,
                                      std::uint64_t seed);

struct CorpusSpec {
  ClassProfiles profiles = default_profiles();
  ClassCounts counts = kLargeSetCounts;
  double clip_seconds = 6.0;
  std::uint64_t seed = 0;
  // Clip ids are <prefix>-<label>-<index>.
  std::string id_prefix = "clip";
  // Split written into every record.
  Split split = Split::kTrain;

  void validate() const;
};

// Seed of clip `index` of class `label`, independent of generation order.
std::uint64_t clip_seed(std::uint64_t corpus_seed, Label label, std::size_t index);

struct GeneratedClip {
  ManifestRecord record;
  features::AudioSignal signal;
};

std::vector<GeneratedClip> generate_clips(const CorpusSpec& spec);

// Writes <out_dir>/wav/<id>.wav for every clip and returns the manifest
// (paths relative to out_dir). Does not write the manifest file.
CorpusManifest generate_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir);

}  // namespace swce::data

#endif  // SWCE_DATA_CORPUS_H_
