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

#ifndef BOOKPROSODY_ERROR_HPP_
#define BOOKPROSODY_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bookprosody {

/// Root of every error thrown by the library. Catch this at process
/// boundaries; catch the concrete types where recovery is possible.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BOOKPROSODY_DEFINE_ERROR(Name)      \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

// dsp
BOOKPROSODY_DEFINE_ERROR(UnsupportedFormat);
BOOKPROSODY_DEFINE_ERROR(CorruptFile);
BOOKPROSODY_DEFINE_ERROR(InputTooShort);

// align_ingest
BOOKPROSODY_DEFINE_ERROR(SchemaError);
BOOKPROSODY_DEFINE_ERROR(NoTimingInfo);

// segment
BOOKPROSODY_DEFINE_ERROR(TokenMismatch);

// prosody / features / models / eval
BOOKPROSODY_DEFINE_ERROR(NoData);
BOOKPROSODY_DEFINE_ERROR(TableError);
BOOKPROSODY_DEFINE_ERROR(DimError);
BOOKPROSODY_DEFINE_ERROR(UnknownCharacter);
BOOKPROSODY_DEFINE_ERROR(DataError);
BOOKPROSODY_DEFINE_ERROR(InsufficientCharacters);

// ssml
BOOKPROSODY_DEFINE_ERROR(RefError);

// configuration and file plumbing
BOOKPROSODY_DEFINE_ERROR(ConfigError);
BOOKPROSODY_DEFINE_ERROR(IoError);

#undef BOOKPROSODY_DEFINE_ERROR

/// Character offsets supplied by the aligner fall outside the chapter text
/// or are not strictly increasing.
class OffsetError : public Error {
 public:
  OffsetError(std::size_t word_index, const std::string& what)
      : Error(what), word_index_(word_index) {}
  std::size_t word_index() const noexcept { return word_index_; }

 private:
  std::size_t word_index_;
};

/// Malformed bracketed tree. `position` is the byte offset at which the
/// reader gave up.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Malformed tabular input. `line` is 1-based.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Embedding rows do not match the expected segment ids.
class RowMismatch : public Error {
 public:
  RowMismatch(std::vector<long> missing, std::vector<long> surplus);
  const std::vector<long>& missing() const noexcept { return missing_; }
  const std::vector<long>& surplus() const noexcept { return surplus_; }

 private:
  std::vector<long> missing_;
  std::vector<long> surplus_;
};

class TrainingDiverged : public Error {
 public:
  explicit TrainingDiverged(int epoch)
      : Error("training loss became non-finite in epoch " +
              std::to_string(epoch)),
        epoch_(epoch) {}
  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

}  // namespace bookprosody

#endif  // BOOKPROSODY_ERROR_HPP_
