// core/include/swce/features/framing.h

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

#ifndef SWCE_FEATURES_FRAMING_H_
#define SWCE_FEATURES_FRAMING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "swce/features/audio.h"

namespace swce::features {

// floor((num_samples - window) / hop) + 1; throws TooShortError when the
// signal does not hold a single window.
std::size_t frame_count(std::size_t num_samples);

// Views of each full 4000-sample window, hop 3200. A trailing partial
// window is dropped. The views alias `signal.samples`.
std::vector<std::span<const double>> frame_signal(const AudioSignal& signal);

}  // namespace swce::features

#endif  // SWCE_FEATURES_FRAMING_H_
