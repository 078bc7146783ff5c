// core/include/swce/training/history.h

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

#ifndef SWCE_TRAINING_HISTORY_H_
#define SWCE_TRAINING_HISTORY_H_

#include <iosfwd>
#include <string>

#include "swce/training/supervised.h"

namespace swce::training {

// Line-delimited JSON, one record per line:
//   {"step":0,"loss":1.09}
//   {"epoch":0,"train_loss":1.1,"dev_acc":0.5}
// Step records come first, then epoch records, each in order.
void write_history(std::ostream& out, const TrainHistory& history);
std::string history_jsonl(const TrainHistory& history);

// Reads back the step and epoch records; other fields stay default.
// Throws FormatError on a malformed line.
TrainHistory read_history(std::istream& in);

}  // namespace swce::training

#endif  // SWCE_TRAINING_HISTORY_H_
