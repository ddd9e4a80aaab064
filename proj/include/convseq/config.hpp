#pragma once

#include <cstddef>

#include <json.hpp>

namespace convseq {

// Every tunable of the encode/sequence/match pipeline. Threshold and length
// defaults are the standard operating point (ET=0.5, IT=0.9, min_k=1,
// max_k_info_gain=15, max_k=25); image, cell and bin sizes are conventional.
struct PipelineConfig {
  std::size_t image_width = 512;   // W1
  std::size_t image_height = 512;  // H1
  std::size_t cell_width = 16;     // W2
  std::size_t cell_height = 16;    // H2
  std::size_t bins = 8;            // L, orientation bins over [0, 180)
  std::size_t entropy_radius = 5;  // half-width of the local entropy window

  double entropy_threshold = 0.5;  // ET
  double info_threshold = 0.9;     // IT

  std::size_t min_k = 1;
  std::size_t max_k_info_gain = 15;
  std::size_t max_k = 25;
  std::size_t seq_step = 1;

  std::size_t grid_cols() const noexcept { return image_width / cell_width; }
  std::size_t grid_rows() const noexcept { return image_height / cell_height; }
  std::size_t region_count() const noexcept { return grid_cols() * grid_rows(); }
  std::size_t descriptor_depth() const noexcept { return 4 * bins; }

  // Throws Error{Config} naming the first violated invariant.
  void validate() const;

  // Fixed sequence length k: the dynamic sequencer always returns k.
  PipelineConfig with_fixed_length(std::size_t k) const;

  bool operator==(const PipelineConfig&) const = default;
};

void to_json(nlohmann::json& j, const PipelineConfig& cfg);
// Missing keys keep their current value so partial config files layer over
// defaults.
void from_json(const nlohmann::json& j, PipelineConfig& cfg);

}  // namespace convseq
