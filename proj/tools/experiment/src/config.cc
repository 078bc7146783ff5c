// tools/experiment/src/config.cc

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

#include "swce/experiment/config.h"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "swce/common/errors.h"

namespace swce::experiment {

namespace pt = boost::property_tree;

std::string_view pipeline_name(Pipeline p) {
  return p == Pipeline::kHandcrafted ? "handcrafted-features" : "toy-w2v";
}

std::string_view model_name(ModelKind m) { return m == ModelKind::kGru ? "GRU" : "ACNN"; }

std::string_view loss_name(losses::LossKind l) {
  return l == losses::LossKind::kCrossEntropy ? "CE" : "SWCE";
}

std::string CorpusSettings::canonical() const {
  return fmt::format("corpus-v1 seed={} large={} small={} clip_seconds={} split_seed={}", seed,
                     fmt::join(large_counts, "/"), fmt::join(small_counts, "/"), clip_seconds,
                     split_seed);
}

std::string PretrainSettings::canonical() const {
  const auto& c = config;
  return fmt::format(
      "pretrain-v1 enabled={} steps={} batch={} lr={} crop={} mask_prob={} span={} temp={} "
      "distractors={} div_w={} div_t={} seed={} init={}",
      enabled, c.steps, c.batch_size, c.lr, c.crop_samples, c.mask.prob, c.mask.span,
      c.contrastive.temperature, c.contrastive.num_distractors, c.diversity_weight,
      c.diversity_temperature, c.seed, c.init_codebook_from_data);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view field, std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string item = trim(text.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start));
    if (item.empty()) throw ConfigError(std::string(field), "empty list entry");
    out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t to_uint(std::string_view field, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(std::string(field), fmt::format("expected a non-negative integer, got '{}'",
                                                      text));
  return v;
}

double to_double(std::string_view field, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(std::string(field), fmt::format("expected a number, got '{}'", text));
  return v;
}

bool to_bool(std::string_view field, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(std::string(field), fmt::format("expected true or false, got '{}'", text));
}

data::ClassCounts to_counts(std::string_view field, const std::string& text) {
  const auto v = parse_uint_list(field, text);
  if (v.size() != 3)
    throw ConfigError(std::string(field), "expected three counts (AD, MCI, HC)");
  return {v[0], v[1], v[2]};
}

using Handler = std::function<void(ExperimentConfig&, const std::string& field,
                                   const std::string& value)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"experiment.name", [](auto& c, auto&, auto& v) { c.name = v; }},
      {"experiment.pipeline",
       [](auto& c, auto& f, auto& v) {
         if (v == "handcrafted-features")
           c.pipeline = Pipeline::kHandcrafted;
         else if (v == "toy-w2v")
           c.pipeline = Pipeline::kToyW2v;
         else
           throw ConfigError(f, fmt::format("expected handcrafted-features or toy-w2v, got '{}'", v));
       }},
      {"experiment.models",
       [](auto& c, auto& f, auto& v) {
         c.models.clear();
         for (const auto& m : split_list(f, v)) {
           if (m == "GRU")
             c.models.push_back(ModelKind::kGru);
           else if (m == "ACNN" || m == "A-CNN")
             c.models.push_back(ModelKind::kAcnn);
           else
             throw ConfigError(f, fmt::format("expected GRU or ACNN, got '{}'", m));
         }
       }},
      {"experiment.losses",
       [](auto& c, auto& f, auto& v) {
         c.losses.clear();
         for (const auto& l : split_list(f, v)) {
           if (l == "CE")
             c.losses.push_back(losses::LossKind::kCrossEntropy);
           else if (l == "SWCE")
             c.losses.push_back(losses::LossKind::kSoftWeighted);
           else
             throw ConfigError(f, fmt::format("expected CE or SWCE, got '{}'", l));
         }
       }},
      {"experiment.freeze_steps",
       [](auto& c, auto& f, auto& v) { c.freeze_steps = parse_uint_list(f, v); }},
      {"experiment.freeze_unit",
       [](auto& c, auto& f, auto& v) {
         try {
           c.freeze_unit = training::parse_freeze_unit(v);
         } catch (const ConfigError& e) {
           throw ConfigError(f, fmt::format("expected steps or epochs, got '{}'", v));
         }
       }},
      {"experiment.seeds", [](auto& c, auto& f, auto& v) { c.seeds = parse_uint_list(f, v); }},
      {"corpus.seed", [](auto& c, auto& f, auto& v) { c.corpus.seed = to_uint(f, v); }},
      {"corpus.large_counts",
       [](auto& c, auto& f, auto& v) { c.corpus.large_counts = to_counts(f, v); }},
      {"corpus.small_counts",
       [](auto& c, auto& f, auto& v) { c.corpus.small_counts = to_counts(f, v); }},
      {"corpus.clip_seconds",
       [](auto& c, auto& f, auto& v) { c.corpus.clip_seconds = to_double(f, v); }},
      {"corpus.split_seed", [](auto& c, auto& f, auto& v) { c.corpus.split_seed = to_uint(f, v); }},
      {"training.lr", [](auto& c, auto& f, auto& v) { c.training.lr = to_double(f, v); }},
      {"training.batch_size",
       [](auto& c, auto& f, auto& v) { c.training.batch_size = to_uint(f, v); }},
      {"training.max_epochs",
       [](auto& c, auto& f, auto& v) { c.training.max_epochs = to_uint(f, v); }},
      {"training.patience", [](auto& c, auto& f, auto& v) { c.training.patience = to_uint(f, v); }},
      {"pretrain.enabled", [](auto& c, auto& f, auto& v) { c.pretrain.enabled = to_bool(f, v); }},
      {"pretrain.steps", [](auto& c, auto& f, auto& v) { c.pretrain.config.steps = to_uint(f, v); }},
      {"pretrain.batch_size",
       [](auto& c, auto& f, auto& v) { c.pretrain.config.batch_size = to_uint(f, v); }},
      {"pretrain.lr", [](auto& c, auto& f, auto& v) { c.pretrain.config.lr = to_double(f, v); }},
      {"pretrain.crop_seconds",
       [](auto& c, auto& f, auto& v) {
         const double s = to_double(f, v);
         if (s < 0.0) throw ConfigError(f, "must be non-negative");
         c.pretrain.config.crop_samples =
             static_cast<std::size_t>(std::llround(s * features::kSampleRate));
       }},
      {"pretrain.mask_prob",
       [](auto& c, auto& f, auto& v) { c.pretrain.config.mask.prob = to_double(f, v); }},
      {"pretrain.mask_span",
       [](auto& c, auto& f, auto& v) { c.pretrain.config.mask.span = to_uint(f, v); }},
      {"pretrain.temperature",
       [](auto& c, auto& f, auto& v) {
         c.pretrain.config.contrastive.temperature = to_double(f, v);
       }},
      {"pretrain.num_distractors",
       [](auto& c, auto& f, auto& v) {
         c.pretrain.config.contrastive.num_distractors = to_uint(f, v);
       }},
      {"pretrain.diversity_weight",
       [](auto& c, auto& f, auto& v) { c.pretrain.config.diversity_weight = to_double(f, v); }},
      {"pretrain.diversity_temperature",
       [](auto& c, auto& f, auto& v) {
         c.pretrain.config.diversity_temperature = to_double(f, v);
       }},
      {"pretrain.seed", [](auto& c, auto& f, auto& v) { c.pretrain.config.seed = to_uint(f, v); }},
  };
  return table;
}

template <typename T>
void require_unique(const char* field, const std::vector<T>& items) {
  std::set<T> seen(items.begin(), items.end());
  if (seen.size() != items.size()) throw ConfigError(field, "duplicate entries");
}

}  // namespace

std::vector<std::uint64_t> parse_uint_list(std::string_view field, std::string_view text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(field, text)) out.push_back(to_uint(field, item));
  return out;
}

void ExperimentConfig::validate() const {
  if (name.empty() || name.find_first_of("/\\ ") != std::string::npos)
    throw ConfigError("experiment.name", "must be non-empty without spaces or slashes");
  if (models.empty()) throw ConfigError("experiment.models", "needs at least one model");
  if (losses.empty()) throw ConfigError("experiment.losses", "needs at least one loss");
  if (freeze_steps.empty()) throw ConfigError("experiment.freeze_steps", "needs at least one value");
  if (seeds.empty()) throw ConfigError("experiment.seeds", "needs at least one seed");
  require_unique("experiment.models", models);
  require_unique("experiment.losses", losses);
  require_unique("experiment.freeze_steps", freeze_steps);
  require_unique("experiment.seeds", seeds);
  if (pipeline == Pipeline::kHandcrafted && (freeze_steps.size() != 1 || freeze_steps[0] != 0))
    throw ConfigError("experiment.freeze_steps",
                      "handcrafted-features has no pretrained block; use 0");
  for (std::size_t c = 0; c < 3; ++c) {
    if (corpus.large_counts[c] < 2)
      throw ConfigError("corpus.large_counts", "every class needs at least two clips");
    if (corpus.small_counts[c] < 1)
      throw ConfigError("corpus.small_counts", "every class needs at least one clip");
  }
  // Shortest clip that still yields enough frames for the A-CNN.
  if (!(corpus.clip_seconds >= 4.0) || corpus.clip_seconds > 600.0)
    throw ConfigError("corpus.clip_seconds", "must lie in [4, 600]");
  if (!(training.lr > 0.0)) throw ConfigError("training.lr", "must be positive");
  if (training.batch_size == 0) throw ConfigError("training.batch_size", "must be at least 1");
  if (training.max_epochs == 0) throw ConfigError("training.max_epochs", "must be at least 1");
  if (pipeline == Pipeline::kToyW2v && pretrain.enabled) pretrain.config.validate();
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}", e.line()), e.message());
  }
  ExperimentConfig config;
  const std::set<std::string> sections = {"experiment", "corpus", "training", "pretrain"};
  for (const auto& [section, keys] : tree) {
    if (!sections.count(section)) {
      if (keys.empty())
        throw ConfigError(section, "keys must sit inside a [section]");
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, value] : keys) {
      const std::string field = section + "." + key;
      auto it = handlers().find(field);
      if (it == handlers().end()) throw ConfigError(field, "unknown key");
      it->second(config, field, trim(value.data()));
    }
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream text;
  text << f.rdbuf();
  return parse_config(text.str());
}

}  // namespace swce::experiment
