#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wect/errors.hpp"

namespace wect {

// Row-major grayscale raster. File-backed sources stay in 0..255; the in-memory
// type allows any nonnegative value so synthetic inputs are not clamped.
struct ImageGrid {
  int rows = 0;
  int cols = 0;
  std::vector<int> pixels;  // rows * cols entries

  int at(int r, int c) const { return pixels[static_cast<size_t>(r) * cols + c]; }
  int& at(int r, int c) { return pixels[static_cast<size_t>(r) * cols + c]; }
};

ImageGrid make_image(int rows, int cols, std::vector<int> pixels);

struct LabeledSet {
  std::vector<ImageGrid> images;
  std::vector<int> labels;
};

// IDX readers (big-endian headers). Strict: wrong magic, truncated payload and
// trailing bytes are distinct errors carrying byte offsets.
std::vector<ImageGrid> read_idx_images(std::span<const uint8_t> bytes);
std::vector<int> read_idx_labels(std::span<const uint8_t> bytes);

// PGM (P2 ASCII / P5 binary), maxval <= 255, '#' comments allowed in the header.
ImageGrid read_pgm(std::span<const uint8_t> bytes);
std::vector<uint8_t> write_pgm(const ImageGrid& img);  // emits P5, maxval 255

// Deterministic seed-keyed selection of exactly per_class samples per label,
// original order within each class preserved; output grouped by ascending label.
LabeledSet subsample_balanced(const LabeledSet& set, int per_class, uint64_t seed);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const uint8_t> bytes);

}  // namespace wect
