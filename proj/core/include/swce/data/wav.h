// core/include/swce/data/wav.h

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

#ifndef SWCE_DATA_WAV_H_
#define SWCE_DATA_WAV_H_

#include <filesystem>
#include <string>

#include "swce/features/audio.h"

namespace swce::data {

// RIFF/WAVE, PCM 16-bit, mono, 16 kHz only. Samples are divided by 32768.
// Throws FormatError naming the violated field (riff, wave, audio_format,
// channels, sample_rate, bits_per_sample, ...) and CorruptFileError when the
// file ends before a chunk does.
features::AudioSignal decode_wav(const std::string& bytes);
features::AudioSignal load_wav(const std::filesystem::path& path);

// Inverse of decode_wav: round(x * 32768) clamped to the int16 range.
std::string encode_wav(const features::AudioSignal& signal);
void save_wav(const std::filesystem::path& path, const features::AudioSignal& signal);

}  // namespace swce::data

#endif  // SWCE_DATA_WAV_H_
