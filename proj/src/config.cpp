#include "convseq/config.hpp"

#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "convseq/error.hpp"

namespace convseq {

void PipelineConfig::validate() const {
  if (image_width == 0 || image_height == 0) {
    throw config_error("image size must be non-zero");
  }
  if (cell_width == 0 || cell_height == 0) {
    throw config_error("cell size must be non-zero");
  }
  if (image_width % cell_width != 0 || image_height % cell_height != 0) {
    throw config_error(fmt::format("image size {}x{} is not divisible by cell size {}x{}",
                                   image_width, image_height, cell_width, cell_height));
  }
  if (grid_cols() < 2 || grid_rows() < 2) {
    throw config_error(fmt::format("cell grid {}x{} is smaller than one 2x2 block",
                                   grid_cols(), grid_rows()));
  }
  if (bins < 2) throw config_error("bins must be at least 2");
  if (entropy_radius < 1) throw config_error("entropy_radius must be at least 1");
  if (!(entropy_threshold >= 0.0 && entropy_threshold <= 1.0)) {
    throw config_error(fmt::format("ET={} outside [0,1]", entropy_threshold));
  }
  if (!(info_threshold >= 0.0 && info_threshold <= 1.0)) {
    throw config_error(fmt::format("IT={} outside [0,1]", info_threshold));
  }
  if (min_k < 1 || min_k > max_k_info_gain || max_k_info_gain > max_k) {
    throw config_error(fmt::format(
        "sequence bounds must satisfy 1 <= min_k ({}) <= max_k_info_gain ({}) <= max_k ({})",
        min_k, max_k_info_gain, max_k));
  }
  if (seq_step < 1) throw config_error("seq_step must be at least 1");
}

PipelineConfig PipelineConfig::with_fixed_length(std::size_t k) const {
  PipelineConfig out = *this;
  out.min_k = k;
  out.max_k_info_gain = k;
  out.max_k = k;
  return out;
}

void to_json(nlohmann::json& j, const PipelineConfig& cfg) {
  j = nlohmann::json{
      {"image_width", cfg.image_width},
      {"image_height", cfg.image_height},
      {"cell_width", cfg.cell_width},
      {"cell_height", cfg.cell_height},
      {"bins", cfg.bins},
      {"entropy_radius", cfg.entropy_radius},
      {"entropy_threshold", cfg.entropy_threshold},
      {"info_threshold", cfg.info_threshold},
      {"min_k", cfg.min_k},
      {"max_k_info_gain", cfg.max_k_info_gain},
      {"max_k", cfg.max_k},
      {"seq_step", cfg.seq_step},
  };
}

namespace {

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& field) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    field = it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(fmt::format("config field '{}': {}", key, e.what()));
  }
}

}  // namespace

void from_json(const nlohmann::json& j, PipelineConfig& cfg) {
  if (!j.is_object()) throw config_error("config must be a JSON object");
  read_field(j, "image_width", cfg.image_width);
  read_field(j, "image_height", cfg.image_height);
  read_field(j, "cell_width", cfg.cell_width);
  read_field(j, "cell_height", cfg.cell_height);
  read_field(j, "bins", cfg.bins);
  read_field(j, "entropy_radius", cfg.entropy_radius);
  read_field(j, "entropy_threshold", cfg.entropy_threshold);
  read_field(j, "info_threshold", cfg.info_threshold);
  read_field(j, "min_k", cfg.min_k);
  read_field(j, "max_k_info_gain", cfg.max_k_info_gain);
  read_field(j, "max_k", cfg.max_k);
  read_field(j, "seq_step", cfg.seq_step);
}

}  // namespace convseq
