#include "wect/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace wect {

ImageGrid make_image(int rows, int cols, std::vector<int> pixels) {
  if (rows < 1 || cols < 1 || pixels.size() != static_cast<size_t>(rows) * cols) {
    throw contract_error("make_image: pixel count does not match rows*cols");
  }
  return {rows, cols, std::move(pixels)};
}

namespace {

constexpr uint32_t kIdxImagesMagic = 0x00000803;
constexpr uint32_t kIdxLabelsMagic = 0x00000801;

uint32_t read_be32(std::span<const uint8_t> bytes, size_t offset) {
  if (offset + 4 > bytes.size()) {
    throw parse_error("idx: truncated header at byte " + std::to_string(offset) + " (need 4 bytes, have " +
                      std::to_string(bytes.size() - offset) + ")");
  }
  return (uint32_t(bytes[offset]) << 24) | (uint32_t(bytes[offset + 1]) << 16) |
         (uint32_t(bytes[offset + 2]) << 8) | uint32_t(bytes[offset + 3]);
}

void check_payload(std::span<const uint8_t> bytes, size_t header, uint64_t expected) {
  // validated before any allocation sized from the header
  uint64_t actual = bytes.size() - header;
  if (actual < expected) {
    throw parse_error("idx: truncated payload, expected " + std::to_string(expected) + " bytes after offset " +
                      std::to_string(header) + ", got " + std::to_string(actual));
  }
  if (actual > expected) {
    throw parse_error("idx: " + std::to_string(actual - expected) + " trailing bytes after offset " +
                      std::to_string(header + expected));
  }
}

}  // namespace

std::vector<ImageGrid> read_idx_images(std::span<const uint8_t> bytes) {
  uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxImagesMagic) {
    std::ostringstream os;
    os << "idx: wrong magic 0x" << std::hex << magic << " at byte 0 (expected 0x803)";
    throw parse_error(os.str());
  }
  uint32_t count = read_be32(bytes, 4);
  uint32_t rows = read_be32(bytes, 8);
  uint32_t cols = read_be32(bytes, 12);
  if (rows < 1 || cols < 1 || rows > 1u << 16 || cols > 1u << 16) {
    throw parse_error("idx: implausible image shape " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  check_payload(bytes, 16, uint64_t(count) * rows * cols);

  std::vector<ImageGrid> images;
  images.reserve(count);
  size_t offset = 16;
  for (uint32_t k = 0; k < count; ++k) {
    ImageGrid g;
    g.rows = static_cast<int>(rows);
    g.cols = static_cast<int>(cols);
    g.pixels.resize(static_cast<size_t>(rows) * cols);
    for (size_t i = 0; i < g.pixels.size(); ++i) g.pixels[i] = bytes[offset + i];
    offset += g.pixels.size();
    images.push_back(std::move(g));
  }
  return images;
}

std::vector<int> read_idx_labels(std::span<const uint8_t> bytes) {
  uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxLabelsMagic) {
    std::ostringstream os;
    os << "idx: wrong magic 0x" << std::hex << magic << " at byte 0 (expected 0x801)";
    throw parse_error(os.str());
  }
  uint32_t count = read_be32(bytes, 4);
  check_payload(bytes, 8, count);
  std::vector<int> labels(count);
  for (uint32_t i = 0; i < count; ++i) labels[i] = bytes[8 + i];
  return labels;
}

namespace {

// PGM header tokenizer: whitespace-separated decimal fields, '#' to end of line.
struct PgmScanner {
  std::span<const uint8_t> bytes;
  size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      uint8_t c = bytes[pos];
      if (std::isspace(c)) {
        ++pos;
      } else if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  int next_int(const char* field) {
    skip_space_and_comments();
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw parse_error(std::string("pgm: expected ") + field + " at byte " + std::to_string(pos));
    }
    long value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos] - '0');
      if (value > 1 << 30) throw parse_error(std::string("pgm: ") + field + " out of range");
      ++pos;
    }
    return static_cast<int>(value);
  }
};

}  // namespace

ImageGrid read_pgm(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw parse_error("pgm: bad magic (expected P2 or P5)");
  }
  bool binary = bytes[1] == '5';
  PgmScanner sc{bytes, 2};
  int cols = sc.next_int("width");
  int rows = sc.next_int("height");
  int maxval = sc.next_int("maxval");
  if (cols < 1 || rows < 1) throw parse_error("pgm: non-positive dimensions");
  if (maxval < 1 || maxval > 255) {
    throw parse_error("pgm: maxval " + std::to_string(maxval) + " unsupported (must be 1..255)");
  }

  ImageGrid g;
  g.rows = rows;
  g.cols = cols;
  size_t n = static_cast<size_t>(rows) * cols;

  if (binary) {
    // exactly one whitespace byte separates maxval from the raster
    if (sc.pos >= bytes.size() || !std::isspace(bytes[sc.pos])) {
      throw parse_error("pgm: missing whitespace before raster at byte " + std::to_string(sc.pos));
    }
    ++sc.pos;
    if (bytes.size() - sc.pos < n) {
      throw parse_error("pgm: truncated raster, expected " + std::to_string(n) + " bytes, got " +
                        std::to_string(bytes.size() - sc.pos));
    }
    if (bytes.size() - sc.pos > n) {
      throw parse_error("pgm: trailing bytes after raster at byte " + std::to_string(sc.pos + n));
    }
    g.pixels.resize(n);
    for (size_t i = 0; i < n; ++i) g.pixels[i] = bytes[sc.pos + i];
  } else {
    g.pixels.reserve(n);
    for (size_t i = 0; i < n; ++i) g.pixels.push_back(sc.next_int("pixel"));
    sc.skip_space_and_comments();
    if (sc.pos != bytes.size()) {
      throw parse_error("pgm: trailing data after raster at byte " + std::to_string(sc.pos));
    }
  }
  for (int p : g.pixels) {
    if (p > maxval) throw parse_error("pgm: pixel value " + std::to_string(p) + " exceeds maxval");
  }
  return g;
}

std::vector<uint8_t> write_pgm(const ImageGrid& img) {
  if (img.rows < 1 || img.cols < 1 || img.pixels.size() != static_cast<size_t>(img.rows) * img.cols) {
    throw contract_error("write_pgm: malformed image");
  }
  for (int p : img.pixels) {
    if (p < 0 || p > 255) throw contract_error("write_pgm: pixel out of 0..255 range");
  }
  std::string header = "P5\n" + std::to_string(img.cols) + " " + std::to_string(img.rows) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.pixels.size());
  for (int p : img.pixels) out.push_back(static_cast<uint8_t>(p));
  return out;
}

LabeledSet subsample_balanced(const LabeledSet& set, int per_class, uint64_t seed) {
  if (set.images.size() != set.labels.size()) throw contract_error("subsample_balanced: length mismatch");
  if (per_class < 1) throw contract_error("subsample_balanced: per_class must be positive");

  std::map<int, std::vector<int>> by_label;
  for (size_t i = 0; i < set.labels.size(); ++i) by_label[set.labels[i]].push_back(static_cast<int>(i));

  LabeledSet out;
  for (auto& [label, members] : by_label) {
    if (static_cast<int>(members.size()) < per_class) {
      throw contract_error("subsample_balanced: class " + std::to_string(label) + " has only " +
                           std::to_string(members.size()) + " samples");
    }
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(label + 1));
    std::shuffle(members.begin(), members.end(), rng);
    members.resize(per_class);
    std::sort(members.begin(), members.end());  // original order within class
    for (int i : members) {
      out.images.push_back(set.images[i]);
      out.labels.push_back(label);
    }
  }
  return out;
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open file: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot open file for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw parse_error("write failed: " + path);
}

}  // namespace wect
