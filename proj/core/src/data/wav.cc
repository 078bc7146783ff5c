// core/src/data/wav.cc

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

#include "swce/data/wav.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>

#include "swce/common/errors.h"

namespace swce::data {

namespace {

std::uint32_t read_u32(const std::string& b, std::size_t at) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3])) << 24;
}

std::uint16_t read_u16(const std::string& b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    static_cast<unsigned char>(b[at + 1]) << 8);
}

void put_u32(std::string& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u16(std::string& b, std::uint16_t v) {
  b.push_back(static_cast<char>(v & 0xff));
  b.push_back(static_cast<char>(v >> 8));
}

template <typename T>
void expect(const char* field, T got, T want) {
  if (got != want) throw FormatError(fmt::format("{}: expected {}, got {}", field, want, got));
}

}  // namespace

features::AudioSignal decode_wav(const std::string& bytes) {
  if (bytes.size() < 12) throw CorruptFileError("wav: file ends inside the RIFF header");
  if (bytes.compare(0, 4, "RIFF") != 0) throw FormatError("riff: missing RIFF tag");
  if (bytes.compare(8, 4, "WAVE") != 0) throw FormatError("wave: missing WAVE tag");

  bool have_fmt = false;
  std::optional<std::pair<std::size_t, std::size_t>> data;  // offset, size
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const std::size_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size())
      throw CorruptFileError(fmt::format("wav: '{}' chunk declares {} bytes, {} remain", id, size,
                                         bytes.size() - body));
    if (id == "fmt ") {
      if (size < 16) throw CorruptFileError("wav: fmt chunk shorter than 16 bytes");
      expect<unsigned>("audio_format", read_u16(bytes, body), 1);
      expect<unsigned>("channels", read_u16(bytes, body + 2), 1);
      expect<unsigned>("sample_rate", read_u32(bytes, body + 4), features::kSampleRate);
      expect<unsigned>("bits_per_sample", read_u16(bytes, body + 14), 16);
      expect<unsigned>("block_align", read_u16(bytes, body + 12), 2);
      expect<unsigned>("byte_rate", read_u32(bytes, body + 8), 2 * features::kSampleRate);
      have_fmt = true;
    } else if (id == "data") {
      data = std::make_pair(body, size);
    }
    pos = body + size + (size & 1);
  }
  if (pos < bytes.size() && pos + 8 > bytes.size())
    throw CorruptFileError("wav: file ends inside a chunk header");
  if (!have_fmt) throw FormatError("fmt: no fmt chunk");
  if (!data) throw FormatError("data: no data chunk");
  if (data->second % 2 != 0) throw CorruptFileError("wav: data chunk holds half a sample");

  features::AudioSignal signal;
  signal.samples.resize(data->second / 2);
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    const auto v = static_cast<std::int16_t>(read_u16(bytes, data->first + 2 * i));
    signal.samples[i] = static_cast<double>(v) / 32768.0;
  }
  return signal;
}

features::AudioSignal load_wav(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const CorruptFileError& e) {
    throw CorruptFileError(path.string() + ": " + e.what());
  }
}

std::string encode_wav(const features::AudioSignal& signal) {
  signal.validate();
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(2 * signal.samples.size());
  std::string b;
  b.reserve(44 + data_bytes);
  b += "RIFF";
  put_u32(b, 36 + data_bytes);
  b += "WAVEfmt ";
  put_u32(b, 16);
  put_u16(b, 1);
  put_u16(b, 1);
  put_u32(b, features::kSampleRate);
  put_u32(b, 2 * features::kSampleRate);
  put_u16(b, 2);
  put_u16(b, 16);
  b += "data";
  put_u32(b, data_bytes);
  for (double x : signal.samples) {
    const double q = std::clamp(std::round(x * 32768.0), -32768.0, 32767.0);
    put_u16(b, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  return b;
}

void save_wav(const std::filesystem::path& path, const features::AudioSignal& signal) {
  const std::string bytes = encode_wav(signal);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace swce::data
