// Copyright 2026 The Authors.
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

#include "otafl/idx.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include "otafl/errors.hpp"

namespace otafl::idx {
namespace {

std::uint32_t ReadU32(std::span<const std::uint8_t> bytes, std::size_t offset,
                      const char* field) {
  if (offset + 4 > bytes.size()) {
    throw FormatError(std::string("truncated IDX header reading ") + field,
                      offset);
  }
  return (std::uint32_t{bytes[offset]} << 24) |
         (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void CheckMagic(std::uint32_t got, std::uint32_t want) {
  if (got != want) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "bad IDX magic 0x%08x (expected 0x%08x)",
                  got, want);
    throw FormatError(buf, 0);
  }
}

void CheckPayload(std::span<const std::uint8_t> bytes, std::size_t header,
                  std::uint64_t payload) {
  if (bytes.size() - header < payload) {
    throw FormatError("truncated IDX payload: expected " +
                          std::to_string(payload) + " bytes, found " +
                          std::to_string(bytes.size() - header),
                      bytes.size());
  }
  if (bytes.size() - header > payload) {
    throw FormatError("trailing bytes after IDX payload", header + payload);
  }
}

}  // namespace

ImageArray ParseImages(std::span<const std::uint8_t> bytes) {
  CheckMagic(ReadU32(bytes, 0, "magic"), kImageMagic);
  ImageArray out;
  out.count = ReadU32(bytes, 4, "image count");
  out.rows = ReadU32(bytes, 8, "row count");
  out.cols = ReadU32(bytes, 12, "column count");
  const std::uint64_t payload =
      std::uint64_t{out.count} * out.rows * out.cols;
  CheckPayload(bytes, 16, payload);
  out.pixels.assign(bytes.begin() + 16, bytes.end());
  return out;
}

std::vector<std::uint8_t> ParseLabels(std::span<const std::uint8_t> bytes) {
  CheckMagic(ReadU32(bytes, 0, "magic"), kLabelMagic);
  const std::uint32_t count = ReadU32(bytes, 4, "label count");
  CheckPayload(bytes, 8, count);
  return {bytes.begin() + 8, bytes.end()};
}

std::vector<std::uint8_t> EncodeImages(const ImageArray& images) {
  if (images.pixels.size() !=
      std::size_t{images.count} * images.rows * images.cols) {
    throw ParameterError("pixel count does not match image dimensions");
  }
  std::vector<std::uint8_t> out;
  out.reserve(16 + images.pixels.size());
  PutU32(out, kImageMagic);
  PutU32(out, images.count);
  PutU32(out, images.rows);
  PutU32(out, images.cols);
  out.insert(out.end(), images.pixels.begin(), images.pixels.end());
  return out;
}

std::vector<std::uint8_t> EncodeLabels(std::span<const std::uint8_t> labels) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + labels.size());
  PutU32(out, kLabelMagic);
  PutU32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

std::vector<std::uint8_t> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::filesystem::path& path,
               std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

Dataset Load(const std::filesystem::path& images_path,
             const std::filesystem::path& labels_path) {
  const ImageArray images = ParseImages(ReadFile(images_path));
  const std::vector<std::uint8_t> labels = ParseLabels(ReadFile(labels_path));
  if (labels.size() != images.count) {
    throw FormatError("image count " + std::to_string(images.count) +
                          " differs from label count " +
                          std::to_string(labels.size()),
                      4);
  }
  const std::size_t pixels = std::size_t{images.rows} * images.cols;
  Dataset out;
  out.num_classes = 10;
  out.features.resize(images.count, static_cast<Eigen::Index>(pixels));
  out.labels.resize(images.count);
  for (std::uint32_t i = 0; i < images.count; ++i) {
    if (labels[i] > 9) {
      throw FormatError("label " + std::to_string(labels[i]) + " above 9",
                        8 + std::uint64_t{i});
    }
    out.labels[i] = labels[i];
    for (std::size_t p = 0; p < pixels; ++p) {
      out.features(i, static_cast<Eigen::Index>(p)) =
          images.pixels[i * pixels + p] / 255.0;
    }
  }
  return out;
}

}  // namespace otafl::idx
