// Copyright 2026 The bevkit Authors
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

#ifndef BEVKIT__TENSOR_IO_HPP_
#define BEVKIT__TENSOR_IO_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "bevkit/bev_encoding.hpp"
#include "bevkit/errors.hpp"

namespace bevkit
{

static_assert(std::endian::native == std::endian::little,
              "BEVT serialization assumes a little-endian host");

/// The "BEVT" multi-channel tensor container shared by the BEV and front-view
/// encoders (and by external generators targeting the same formats).
struct TensorFile
{
  std::uint16_t version{1};
  std::uint32_t channels{0};
  std::uint32_t rows{0};
  std::uint32_t cols{0};
  double resolution{0.0};
  std::array<double, 6> extents{};  // x/az min,max; y/el min,max; z min,max
  std::vector<std::string> semantics;
  std::vector<float> values;  // channel-major, row-major planes
};

namespace detail
{

template <typename T>
inline void put(std::string & out, T value)
{
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
inline T take(std::string_view bytes, std::size_t & offset)
{
  if (offset + sizeof(T) > bytes.size()) {
    throw ParseError("BEVT: truncated file");
  }
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  offset += sizeof(T);
  return value;
}

}  // namespace detail

inline std::string serialize_tensor(const TensorFile & tensor)
{
  const std::size_t expected =
    static_cast<std::size_t>(tensor.channels) * tensor.rows * tensor.cols;
  if (tensor.values.size() != expected || tensor.semantics.size() != tensor.channels) {
    throw IoError("BEVT: inconsistent tensor dimensions");
  }
  std::string out;
  out.append("BEVT", 4);
  detail::put<std::uint16_t>(out, tensor.version);
  detail::put<std::uint32_t>(out, tensor.channels);
  detail::put<std::uint32_t>(out, tensor.rows);
  detail::put<std::uint32_t>(out, tensor.cols);
  detail::put<double>(out, tensor.resolution);
  for (const double e : tensor.extents) {
    detail::put<double>(out, e);
  }
  detail::put<std::uint16_t>(out, static_cast<std::uint16_t>(tensor.semantics.size()));
  for (const auto & tag : tensor.semantics) {
    detail::put<std::uint16_t>(out, static_cast<std::uint16_t>(tag.size()));
    out.append(tag);
  }
  const std::size_t payload_offset = out.size();
  out.resize(payload_offset + tensor.values.size() * sizeof(float));
  std::memcpy(out.data() + payload_offset, tensor.values.data(),
              tensor.values.size() * sizeof(float));
  return out;
}

inline TensorFile parse_tensor(std::string_view bytes)
{
  if (bytes.size() < 4 || bytes.substr(0, 4) != "BEVT") {
    throw ParseError("BEVT: bad magic");
  }
  std::size_t offset = 4;
  TensorFile tensor;
  tensor.version = detail::take<std::uint16_t>(bytes, offset);
  if (tensor.version != 1) {
    throw ParseError("BEVT: unsupported version " + std::to_string(tensor.version));
  }
  tensor.channels = detail::take<std::uint32_t>(bytes, offset);
  tensor.rows = detail::take<std::uint32_t>(bytes, offset);
  tensor.cols = detail::take<std::uint32_t>(bytes, offset);
  tensor.resolution = detail::take<double>(bytes, offset);
  for (double & e : tensor.extents) {
    e = detail::take<double>(bytes, offset);
  }
  const auto tag_count = detail::take<std::uint16_t>(bytes, offset);
  if (tag_count != tensor.channels) {
    throw ParseError("BEVT: semantics count does not match channel count");
  }
  for (std::uint16_t i = 0; i < tag_count; ++i) {
    const auto len = detail::take<std::uint16_t>(bytes, offset);
    if (offset + len > bytes.size()) {
      throw ParseError("BEVT: truncated semantics tag");
    }
    tensor.semantics.emplace_back(bytes.substr(offset, len));
    offset += len;
  }
  const std::size_t count =
    static_cast<std::size_t>(tensor.channels) * tensor.rows * tensor.cols;
  if (bytes.size() - offset != count * sizeof(float)) {
    throw ParseError("BEVT: payload size mismatch");
  }
  tensor.values.resize(count);
  std::memcpy(tensor.values.data(), bytes.data() + offset, count * sizeof(float));
  return tensor;
}

inline TensorFile tensor_from_bev_grid(const BevGrid & grid)
{
  TensorFile tensor;
  tensor.channels = static_cast<std::uint32_t>(grid.channel_semantics.size());
  tensor.rows = static_cast<std::uint32_t>(grid.rows);
  tensor.cols = static_cast<std::uint32_t>(grid.cols);
  tensor.resolution = grid.config.resolution;
  tensor.extents = {grid.config.x_min, grid.config.x_max, grid.config.y_min,
                    grid.config.y_max, grid.config.z_min, grid.config.z_max};
  tensor.semantics = grid.channel_semantics;
  tensor.values = grid.values;
  return tensor;
}

inline BevGrid bev_grid_from_tensor(const TensorFile & tensor)
{
  GridConfig config;
  config.x_min = tensor.extents[0];
  config.x_max = tensor.extents[1];
  config.y_min = tensor.extents[2];
  config.y_max = tensor.extents[3];
  config.z_min = tensor.extents[4];
  config.z_max = tensor.extents[5];
  config.resolution = tensor.resolution;
  return BevGrid{config, tensor.semantics, tensor.rows, tensor.cols, tensor.values};
}

inline std::string read_file_bytes(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path);
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

inline void write_file_bytes(const std::string & path, std::string_view bytes)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write file: " + path);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace bevkit

#endif  // BEVKIT__TENSOR_IO_HPP_
