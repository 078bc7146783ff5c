// core/src/models/checkpoint.cc

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

#include "swce/models/checkpoint.h"

#include <fmt/format.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>

#include "swce/common/errors.h"
#include "swce/common/hash.h"

namespace swce::models {

namespace {

constexpr const char* kMagic = "swce-checkpoint v1";

static_assert(std::endian::native == std::endian::little,
              "checkpoint encoding assumes a little-endian host");

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r') return false;
  return true;
}

}  // namespace

Checkpoint snapshot(const ad::NamedTensors& params) {
  Checkpoint out;
  out.reserve(params.size());
  for (const auto& p : params) {
    auto v = p.tensor.values();
    out.push_back({p.name, p.tensor.shape(), std::vector<double>(v.begin(), v.end())});
  }
  return out;
}

void restore(const ad::NamedTensors& params, const Checkpoint& checkpoint) {
  std::unordered_map<std::string, const StoredTensor*> by_name;
  for (const auto& s : checkpoint) by_name[s.name] = &s;
  for (const auto& p : params) {
    auto it = by_name.find(p.name);
    if (it == by_name.end())
      throw ContractError("checkpoint has no tensor named " + p.name);
    const StoredTensor& s = *it->second;
    if (s.shape != p.tensor.shape())
      throw ContractError(fmt::format("checkpoint tensor {} has shape {}, parameter has {}",
                                      p.name, ad::shape_string(s.shape),
                                      ad::shape_string(p.tensor.shape())));
    ad::Tensor t = p.tensor;
    auto dst = t.mutable_values();
    std::copy(s.values.begin(), s.values.end(), dst.begin());
  }
}

std::string encode_checkpoint(const Checkpoint& checkpoint) {
  std::string out = fmt::format("{}\n{}\n", kMagic, checkpoint.size());
  std::size_t total = 0;
  for (const auto& s : checkpoint) {
    if (!valid_name(s.name))
      throw ContractError("checkpoint tensor names must be non-empty without whitespace");
    if (ad::shape_size(s.shape) != s.values.size())
      throw ContractError("checkpoint tensor " + s.name + " does not match its shape");
    out += s.name;
    for (std::size_t d : s.shape) out += fmt::format(" {}", d);
    out += '\n';
    total += s.values.size();
  }
  out += "end\n";
  const std::size_t header = out.size();
  out.resize(header + total * sizeof(double));
  char* dst = out.data() + header;
  for (const auto& s : checkpoint) {
    std::memcpy(dst, s.values.data(), s.values.size() * sizeof(double));
    dst += s.values.size() * sizeof(double);
  }
  return out;
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  std::size_t pos = 0;
  auto next_line = [&]() -> std::string {
    const std::size_t nl = bytes.find('\n', pos);
    if (nl == std::string::npos) throw CorruptFileError("checkpoint header is truncated");
    std::string line = bytes.substr(pos, nl - pos);
    pos = nl + 1;
    return line;
  };
  if (next_line() != kMagic) throw FormatError("not a swce checkpoint (bad magic line)");
  std::size_t count = 0;
  try {
    count = std::stoull(next_line());
  } catch (const std::logic_error&) {
    throw FormatError("checkpoint tensor count is not a number");
  }
  Checkpoint out(count);
  std::size_t total = 0;
  for (auto& s : out) {
    std::istringstream line(next_line());
    if (!(line >> s.name)) throw FormatError("checkpoint header line without a name");
    std::size_t d;
    while (line >> d) s.shape.push_back(d);
    if (!line.eof()) throw FormatError("bad shape for checkpoint tensor " + s.name);
    total += ad::shape_size(s.shape);
  }
  if (next_line() != "end") throw FormatError("checkpoint header does not end with 'end'");
  if (bytes.size() - pos != total * sizeof(double))
    throw CorruptFileError(fmt::format("checkpoint payload holds {} bytes, header needs {}",
                                       bytes.size() - pos, total * sizeof(double)));
  const char* src = bytes.data() + pos;
  for (auto& s : out) {
    s.values.resize(ad::shape_size(s.shape));
    std::memcpy(s.values.data(), src, s.values.size() * sizeof(double));
    src += s.values.size() * sizeof(double);
  }
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  const std::string bytes = encode_checkpoint(checkpoint);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

std::string parameter_hash(const ad::NamedTensors& params) {
  Sha256 h;
  for (const auto& p : params) {
    h.update(p.name);
    h.update(p.tensor.values());
  }
  return h.hex_digest();
}

}  // namespace swce::models
