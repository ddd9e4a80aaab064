#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <unistd.h>

#include "convseq/config.hpp"
#include "convseq/descriptor.hpp"
#include "convseq/imaging.hpp"
#include "convseq/saliency.hpp"

namespace convseq::testing {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("convseq_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline GrayImage random_image(std::mt19937_64& rng, std::size_t w, std::size_t h,
                              int levels = 256) {
  GrayImage img(w, h);
  std::uniform_int_distribution<int> d(0, levels - 1);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(d(rng));
  return img;
}

// Non-negative rows of unit norm; each row is all-zero with probability
// `zero_probability`.
inline ImageDescriptor random_descriptor(std::mt19937_64& rng, std::size_t regions,
                                         std::size_t depth, double zero_probability = 0.0) {
  ImageDescriptor d(regions, depth);
  for (std::size_t i = 0; i < regions; ++i) {
    auto row = d.row(i);
    if (uniform_real(rng) < zero_probability) continue;
    double norm = 0.0;
    for (auto& v : row) {
      v = uniform_real(rng) < 0.3 ? 0.0 : uniform_real(rng);
      norm += v * v;
    }
    if (norm == 0.0) {
      row[0] = 1.0;
      norm = 1.0;
    }
    for (auto& v : row) v /= std::sqrt(norm);
  }
  return d;
}

inline RoiSelection all_regions(std::size_t n) {
  RoiSelection roi;
  for (std::size_t i = 0; i < n; ++i) roi.indices.push_back(i);
  return roi;
}

// 64 x 64 working size with 8 px cells: an 8 x 8 region grid.
inline PipelineConfig small_config() {
  PipelineConfig cfg;
  cfg.image_width = cfg.image_height = 64;
  cfg.cell_width = cfg.cell_height = 8;
  cfg.entropy_radius = 3;
  return cfg;
}

}  // namespace convseq::testing
