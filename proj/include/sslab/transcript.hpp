// Copyright 2026 The sslab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sslab {

// Record of one protocol run: inputs, statistics and the verdict. Maps are
// ordered so serialized transcripts are byte-stable.
struct ProtocolTranscript {
  std::string protocol;
  std::uint64_t seed = 0;
  std::string inputs_digest;  // hex FNV-1a of the input amplitudes
  std::map<std::string, double> params;
  std::map<std::string, double> stats;
  std::map<std::string, std::vector<int>> lists;
  bool accept = false;
  std::string reason;
  std::vector<ProtocolTranscript> children;
};

}  // namespace sslab
