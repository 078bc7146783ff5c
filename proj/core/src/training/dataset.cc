// core/src/training/dataset.cc

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

#include "swce/training/dataset.h"

#include "swce/data/wav.h"

namespace swce::training {

std::vector<Clip> load_clips(const data::CorpusManifest& manifest,
                             const std::filesystem::path& root) {
  std::vector<Clip> clips;
  clips.reserve(manifest.records.size());
  for (const auto& r : manifest.records) clips.push_back({r, data::load_wav(root / r.path)});
  return clips;
}

Tensor waveform_tensor(const features::AudioSignal& signal) {
  return Tensor::constant({signal.samples.size(), 1}, signal.samples);
}

namespace {

Splits assemble(const std::vector<Clip>& clips, const std::vector<Tensor>& inputs) {
  std::vector<Example> train, dev, test;
  for (std::size_t i = 0; i < clips.size(); ++i) {
    Example ex{clips[i].record.id, inputs[i], data::label_index(clips[i].record.label)};
    switch (clips[i].record.split) {
      case data::Split::kTrain: train.push_back(std::move(ex)); break;
      case data::Split::kDev: dev.push_back(std::move(ex)); break;
      case data::Split::kTest: test.push_back(std::move(ex)); break;
    }
  }
  return {DataSplit("train", std::move(train)), DataSplit("dev", std::move(dev)),
          DataSplit("test", std::move(test))};
}

}  // namespace

Splits handcrafted_splits(const std::vector<Clip>& clips, features::FeatureStats* stats) {
  std::vector<features::FeatureSequence> raw;
  std::vector<features::FeatureSequence> train_raw;
  raw.reserve(clips.size());
  for (const Clip& c : clips) {
    raw.push_back(features::raw_composite_features(c.signal));
    if (c.record.split == data::Split::kTrain) train_raw.push_back(raw.back());
  }
  const features::FeatureStats s = train_raw.empty()
                                       ? features::FeatureStats::identity(features::kFeatureDim)
                                       : features::FeatureStats::estimate(train_raw);
  std::vector<Tensor> inputs;
  inputs.reserve(raw.size());
  for (auto& f : raw) {
    features::normalize_in_place(f, s);
    inputs.push_back(Tensor::constant({f.num_frames, f.dim}, std::move(f.data)));
  }
  if (stats) *stats = s;
  return assemble(clips, inputs);
}

Splits waveform_splits(const std::vector<Clip>& clips) {
  std::vector<Tensor> inputs;
  inputs.reserve(clips.size());
  for (const Clip& c : clips) inputs.push_back(waveform_tensor(c.signal));
  return assemble(clips, inputs);
}

}  // namespace swce::training
