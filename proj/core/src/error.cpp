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

#include "bookprosody/error.hpp"

#include <sstream>

namespace bookprosody {

namespace {

std::string describe_rows(const std::vector<long>& missing,
                          const std::vector<long>& surplus) {
  std::ostringstream os;
  os << "embedding rows do not match segments";
  auto list = [&os](const char* label, const std::vector<long>& ids) {
    if (ids.empty()) return;
    os << "; " << label << ":";
    for (long id : ids) os << ' ' << id;
  };
  list("missing ids", missing);
  list("surplus ids", surplus);
  return os.str();
}

}  // namespace

RowMismatch::RowMismatch(std::vector<long> missing, std::vector<long> surplus)
    : Error(describe_rows(missing, surplus)),
      missing_(std::move(missing)),
      surplus_(std::move(surplus)) {}

}  // namespace bookprosody
