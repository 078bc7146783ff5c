// core/include/swce/training/dataset.h

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

#ifndef SWCE_TRAINING_DATASET_H_
#define SWCE_TRAINING_DATASET_H_

#include <filesystem>
#include <vector>

#include "swce/data/manifest.h"
#include "swce/features/audio.h"
#include "swce/features/composite.h"
#include "swce/training/supervised.h"

namespace swce::training {

struct Clip {
  data::ManifestRecord record;
  features::AudioSignal signal;
};

// Loads every record of `manifest` from files under `root`.
std::vector<Clip> load_clips(const data::CorpusManifest& manifest,
                             const std::filesystem::path& root);

// [S, 1] constant waveform.
Tensor waveform_tensor(const features::AudioSignal& signal);

// Composite features of every clip, z-normalized with statistics of the
// train clips; returns the statistics through `stats` when given.
Splits handcrafted_splits(const std::vector<Clip>& clips,
                          features::FeatureStats* stats = nullptr);

// Raw waveforms as inputs (for the toy-encoder frontend).
Splits waveform_splits(const std::vector<Clip>& clips);

}  // namespace swce::training

#endif  // SWCE_TRAINING_DATASET_H_
