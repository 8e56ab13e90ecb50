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

#ifndef BOOKPROSODY_DSP_AUDIO_HPP_
#define BOOKPROSODY_DSP_AUDIO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace bookprosody::dsp {

/// Mono audio with samples normalized to [-1, 1].
class AudioBuffer {
 public:
  /// Throws std::invalid_argument if sample_rate <= 0 or any sample is not
  /// finite.
  AudioBuffer(std::vector<double> samples, int sample_rate);

  std::span<const double> samples() const noexcept { return samples_; }
  int sample_rate() const noexcept { return sample_rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

 private:
  std::vector<double> samples_;
  int sample_rate_;
};

/// Reads a RIFF/WAVE file holding PCM 16-bit or IEEE float 32-bit samples
/// (plain or WAVE_FORMAT_EXTENSIBLE) and downmixes all channels by
/// arithmetic mean. PCM16 maps -32768 to -1.0 and 32767 to 32767/32768.
///
/// Throws UnsupportedFormat for any other encoding and CorruptFile for
/// truncated or malformed chunks.
AudioBuffer decode_wav(const std::filesystem::path& path);
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);

/// Serializes as mono PCM16 with clipping. Used for fixtures and tests.
std::vector<std::uint8_t> encode_wav_pcm16(std::span<const double> samples,
                                           int sample_rate,
                                           int channels = 1);
void write_wav_pcm16(const std::filesystem::path& path,
                     std::span<const double> samples, int sample_rate);

}  // namespace bookprosody::dsp

#endif  // BOOKPROSODY_DSP_AUDIO_HPP_
