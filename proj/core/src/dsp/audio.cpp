// Copyright (c) 2026 The bookprosody Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bookprosody/dsp/audio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>

#include "bookprosody/error.hpp"

namespace bookprosody::dsp {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

FmtChunk parse_fmt(const std::uint8_t* p, std::uint32_t size) {
  if (size < 16) throw CorruptFile("fmt chunk shorter than 16 bytes");
  FmtChunk fmt;
  fmt.format = read_u16(p);
  fmt.channels = read_u16(p + 2);
  fmt.sample_rate = read_u32(p + 4);
  fmt.bits = read_u16(p + 14);
  if (fmt.format == kFormatExtensible) {
    if (size < 40) throw CorruptFile("extensible fmt chunk shorter than 40 bytes");
    // First two bytes of the subformat GUID carry the base format tag.
    fmt.format = read_u16(p + 24);
  }
  return fmt;
}

}  // namespace

AudioBuffer::AudioBuffer(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) {
    throw std::invalid_argument("sample rate must be positive");
  }
  if (!std::all_of(samples_.begin(), samples_.end(),
                   [](double s) { return std::isfinite(s); })) {
    throw std::invalid_argument("audio samples must be finite");
  }
}

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw CorruptFile("file shorter than RIFF header");
  const std::uint8_t* base = bytes.data();
  if (std::memcmp(base, "RIFF", 4) != 0 || std::memcmp(base + 8, "WAVE", 4) != 0) {
    throw UnsupportedFormat("not a RIFF/WAVE file");
  }

  std::optional<FmtChunk> fmt;
  const std::uint8_t* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = base + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    if (size > bytes.size() - pos - 8) {
      throw CorruptFile("chunk '" + std::string(reinterpret_cast<const char*>(chunk), 4) +
                        "' extends past end of file");
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      fmt = parse_fmt(chunk + 8, size);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = size;
    }
    pos += 8 + size + (size & 1u);
  }
  if (!fmt) throw CorruptFile("missing fmt chunk");
  if (data == nullptr) throw CorruptFile("missing data chunk");
  if (fmt->channels == 0 || fmt->sample_rate == 0) {
    throw CorruptFile("fmt chunk declares zero channels or zero sample rate");
  }

  const bool pcm16 = fmt->format == kFormatPcm && fmt->bits == 16;
  const bool float32 = fmt->format == kFormatFloat && fmt->bits == 32;
  if (!pcm16 && !float32) {
    throw UnsupportedFormat("unsupported encoding: format tag " +
                            std::to_string(fmt->format) + ", " +
                            std::to_string(fmt->bits) + " bits");
  }

  const std::size_t bytes_per_sample = fmt->bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  if (data_size % frame_bytes != 0) throw CorruptFile("data chunk ends mid-frame");
  const std::size_t frames = data_size / frame_bytes;

  std::vector<double> samples(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double sum = 0.0;
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      const std::uint8_t* p = data + f * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        sum += static_cast<std::int16_t>(read_u16(p)) / 32768.0;
      } else {
        sum += static_cast<double>(std::bit_cast<float>(read_u32(p)));
      }
    }
    samples[f] = sum / fmt->channels;
  }
  if (float32) {
    for (double& s : samples) {
      if (!std::isfinite(s)) throw CorruptFile("non-finite float sample");
      s = std::clamp(s, -1.0, 1.0);
    }
  }
  return AudioBuffer(std::move(samples), static_cast<int>(fmt->sample_rate));
}

AudioBuffer decode_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_wav(std::span<const std::uint8_t>(bytes));
}

std::vector<std::uint8_t> encode_wav_pcm16(std::span<const double> samples,
                                           int sample_rate, int channels) {
  const auto data_size = static_cast<std::uint32_t>(samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate * channels * 2));
  put_u16(out, static_cast<std::uint16_t>(channels * 2));
  put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_size);
  for (double s : samples) {
    const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
    const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

void write_wav_pcm16(const std::filesystem::path& path,
                     std::span<const double> samples, int sample_rate) {
  const auto bytes = encode_wav_pcm16(samples, sample_rate);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace bookprosody::dsp
