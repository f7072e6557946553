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
#include "tailkit/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "tailkit/error.hpp"
#include "text_util.hpp"

namespace tailkit {

namespace {

std::uint64_t read_le(std::string_view bytes, std::size_t offset, int width) {
  std::uint64_t v = 0;
  for (int i = width - 1; i >= 0; --i) {
    v = (v << 8) | static_cast<unsigned char>(bytes[offset + static_cast<std::size_t>(i)]);
  }
  return v;
}

void write_le(std::string& out, std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) {
    out.push_back(static_cast<char>(v & 0xFF));
    v >>= 8;
  }
}

}  // namespace

Eigen::MatrixXd parse_matrix_csv(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("matrix CSV is empty (a header line is required)");

  std::vector<std::vector<double>> rows;
  std::size_t cols = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = detail::trim(lines[i]);
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view cell =
          detail::trim(line.substr(start, comma == std::string_view::npos ? line.npos
                                                                           : comma - start));
      const auto v = detail::parse_double(cell);
      if (!v) throw ParseError("\"" + std::string(cell) + "\" is not a number", i + 1);
      row.push_back(*v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows.empty()) {
      cols = row.size();
    } else if (row.size() != cols) {
      throw ParseError(std::to_string(row.size()) + " columns, expected " + std::to_string(cols),
                       i + 1);
    }
    rows.push_back(std::move(row));
  }

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

std::string format_matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (c > 0) out += ',';
    out += "f" + std::to_string(c);
  }
  out += '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += detail::format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

Eigen::MatrixXd parse_matrix_binary(std::string_view bytes) {
  if (bytes.size() < 24 || std::memcmp(bytes.data(), kMatrixMagic, 4) != 0) {
    throw ParseError("not a TKMX binary matrix");
  }
  const std::uint64_t version = read_le(bytes, 4, 4);
  if (version != 1) throw ParseError("unsupported TKMX version " + std::to_string(version));
  const std::uint64_t rows = read_le(bytes, 8, 8);
  const std::uint64_t cols = read_le(bytes, 16, 8);
  if (cols != 0 && rows > (bytes.size() - 24) / 8 / cols) {
    throw ParseError("TKMX payload is shorter than its header claims");
  }
  if (bytes.size() != 24 + rows * cols * 8) {
    throw ParseError("TKMX payload size does not match its header");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t offset = 24;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = std::bit_cast<double>(read_le(bytes, offset, 8));
      offset += 8;
    }
  }
  return m;
}

std::string format_matrix_binary(const Eigen::MatrixXd& m) {
  std::string out(kMatrixMagic, 4);
  write_le(out, 1, 4);
  write_le(out, static_cast<std::uint64_t>(m.rows()), 8);
  write_le(out, static_cast<std::uint64_t>(m.cols()), 8);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      write_le(out, std::bit_cast<std::uint64_t>(m(r, c)), 8);
    }
  }
  return out;
}

Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open matrix file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMatrixMagic, 4) == 0) {
    return parse_matrix_binary(bytes);
  }
  return parse_matrix_csv(bytes);
}

}  // namespace tailkit
