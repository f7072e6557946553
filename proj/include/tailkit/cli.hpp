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
#pragma once

#include <ostream>
#include <span>
#include <string>

namespace tailkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name; args[0] is one of
/// analyze, plan, mix, remap, augment, eval-det, eval-gen.
///
/// Returns kExitUsage (with usage on `err`) for unknown commands or bad
/// flags, kExitFailure (with a JSON error object on `err`) when the inputs
/// are rejected. Output files are written atomically; without --out the
/// primary JSON document goes to `out`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tailkit
