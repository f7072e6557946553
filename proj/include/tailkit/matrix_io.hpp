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

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace tailkit {

// Two on-disk layouts for feature, probability and embedding matrices.
//
// CSV: one header line (column names, ignored), then one row per sample,
// comma-separated, '.' as the decimal separator.
//
// Raw binary, all integers little-endian:
//   bytes 0-3   magic "TKMX"
//   bytes 4-7   uint32 version (1)
//   bytes 8-15  uint64 rows
//   bytes 16-23 uint64 cols
//   then rows * cols IEEE-754 float64 values, little-endian, row-major.

inline constexpr char kMatrixMagic[4] = {'T', 'K', 'M', 'X'};

Eigen::MatrixXd parse_matrix_csv(std::string_view text);
std::string format_matrix_csv(const Eigen::MatrixXd& m);

Eigen::MatrixXd parse_matrix_binary(std::string_view bytes);
std::string format_matrix_binary(const Eigen::MatrixXd& m);

/// Picks the layout from the leading magic bytes.
Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path);

}  // namespace tailkit
