#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convseq/imaging.hpp"

namespace convseq {

namespace fs = std::filesystem;

struct Traverse {
  std::string name;
  std::vector<fs::path> frames;  // natural filename order
  std::size_t skipped = 0;       // non-image files ignored while listing
};

// Filename order where embedded digit runs compare numerically:
// img1 < img2 < img10. Ties fall back to plain string order so the result is
// a strict total order.
bool natural_less(std::string_view a, std::string_view b);

bool is_supported_image(const fs::path& p);

// Throws Error{Dataset} if the directory is missing or holds no images.
Traverse load_traverse(const fs::path& directory);

// Throws Error{Decode} if the file cannot be decoded.
Raster decode_image(const fs::path& path);
std::vector<Raster> decode_traverse(const Traverse& traverse, std::size_t threads = 1);

// Writes an 8-bit grayscale PNG. Throws Error{Io}.
void write_png(const fs::path& path, const GrayImage& img);

struct GroundTruth {
  std::map<std::size_t, std::size_t> mapping;  // query index -> reference index
  std::size_t tolerance = 2;

  std::optional<std::size_t> truth(std::size_t query) const;
  bool is_correct(std::size_t query, std::size_t predicted) const;
};

// Frame-aligned traverses: query i <-> reference i.
GroundTruth identity_ground_truth(std::size_t frames, std::size_t tolerance);

// Rows of "query_index,reference_index"; a leading header row, blank lines and
// '#' comments are ignored. Throws Error{Parse} naming the offending line.
GroundTruth parse_ground_truth(std::istream& in, std::size_t tolerance);

// Absent file -> identity over `query_frames`.
GroundTruth load_ground_truth(const std::optional<fs::path>& file, std::size_t query_frames,
                              std::size_t tolerance);

void write_ground_truth(const fs::path& path, const GroundTruth& gt);

struct SyntheticVariation {
  double shift_px = 0.0;         // horizontal crop offset of the query traverse
  double brightness_gain = 1.0;  // multiplicative
  double noise_level = 0.0;      // std-dev of additive Gaussian noise, gray levels

  bool is_identity() const noexcept {
    return shift_px == 0.0 && brightness_gain == 1.0 && noise_level == 0.0;
  }
};

struct SyntheticOptions {
  std::uint64_t seed = 0;
  std::size_t frames = 50;
  std::size_t width = 256;
  std::size_t height = 256;
  std::size_t step_px = 32;     // world drift between consecutive frames
  std::size_t tile_px = 64;     // width of one world motif
  std::size_t motifs = 5;       // distinct motifs; fewer means more aliasing
  SyntheticVariation variation;
};

struct SyntheticPair {
  std::vector<GrayImage> reference;
  std::vector<GrayImage> query;
  GroundTruth ground_truth;
};

// Both traverses pan across one seeded world strip built from repeating
// textured motifs (so distant places can look alike); the query traverse
// additionally gets the configured shift, gain and noise. Pure function of
// the options.
SyntheticPair generate_synthetic_traverse(const SyntheticOptions& options);

// <dir>/query/NNNNN.png, <dir>/reference/NNNNN.png, <dir>/ground_truth.csv.
void write_synthetic_dataset(const fs::path& dir, const SyntheticPair& pair);

}  // namespace convseq
