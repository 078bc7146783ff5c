// core/src/training/history.cc

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

#include "swce/training/history.h"

#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "swce/common/errors.h"

namespace swce::training {

using nlohmann::json;

void write_history(std::ostream& out, const TrainHistory& history) {
  for (const StepRecord& s : history.steps)
    out << json{{"step", s.step}, {"loss", s.loss}}.dump() << '\n';
  for (const EpochRecord& e : history.epochs) {
    json line{{"epoch", e.epoch}, {"train_loss", e.train_loss}, {"dev_acc", e.dev_accuracy}};
    if (e.train_accuracy >= 0.0) line["train_acc"] = e.train_accuracy;
    out << line.dump() << '\n';
  }
}

std::string history_jsonl(const TrainHistory& history) {
  std::ostringstream out;
  write_history(out, history);
  return out.str();
}

TrainHistory read_history(std::istream& in) {
  TrainHistory history;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (j.contains("step")) {
        history.steps.push_back({j.at("step").get<std::uint64_t>(), j.at("loss").get<double>()});
      } else {
        EpochRecord e;
        e.epoch = j.at("epoch").get<std::size_t>();
        e.train_loss = j.at("train_loss").get<double>();
        e.dev_accuracy = j.at("dev_acc").get<double>();
        if (j.contains("train_acc")) e.train_accuracy = j.at("train_acc").get<double>();
        history.epochs.push_back(e);
      }
    } catch (const json::exception& err) {
      throw FormatError("history line " + std::to_string(number) + ": " + err.what());
    }
  }
  return history;
}

}  // namespace swce::training
