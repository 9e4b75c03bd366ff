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

#ifndef OTAFL_IDX_HPP_
#define OTAFL_IDX_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "otafl/dataset.hpp"

namespace otafl::idx {

inline constexpr std::uint32_t kImageMagic = 0x00000803;  // u8, 3 dims
inline constexpr std::uint32_t kLabelMagic = 0x00000801;  // u8, 1 dim

struct ImageArray {
  std::uint32_t count = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint8_t> pixels;  // count * rows * cols
};

// Parsers over in-memory IDX bytes. Throw FormatError with the failing
// byte offset on a bad magic, truncated payload or trailing bytes.
ImageArray ParseImages(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> ParseLabels(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> EncodeImages(const ImageArray& images);
std::vector<std::uint8_t> EncodeLabels(std::span<const std::uint8_t> labels);

std::vector<std::uint8_t> ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path,
               std::span<const std::uint8_t> bytes);

// Loads an image/label pair as a Dataset: features = pixels / 255 with
// rows*cols columns, 10 classes. Throws FormatError on count mismatch or a
// label above 9.
Dataset Load(const std::filesystem::path& images_path,
             const std::filesystem::path& labels_path);

}  // namespace otafl::idx

#endif  // OTAFL_IDX_HPP_
