// Copyright 2026 The Tailkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "tailkit/error.hpp"

namespace tailkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kValidation:
      return "validation";
    case ErrorKind::kConfiguration:
      return "configuration";
    case ErrorKind::kArgument:
      return "argument";
    case ErrorKind::kNumerical:
      return "numerical";
    case ErrorKind::kIo:
      return "io";
  }
  return "unknown";
}

}  // namespace tailkit
