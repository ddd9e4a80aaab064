#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "convseq/config.hpp"
#include "convseq/descriptor.hpp"

namespace convseq {

// Binary cache of precomputed reference descriptors.
//
// Layout, all integers and floats little-endian:
//   char[4]  magic "CSQD"
//   u32      version (1)
//   u32 x 5  W1, H1, W2, H2, L
//   u32      image count
//   then, per image, N x 4L f32 values in region-major order.
//
// Values are stored as 32-bit floats; round_to_cache_precision() applies the
// same rounding to in-memory descriptors so cached and fresh runs agree.
inline constexpr std::uint32_t kDescriptorCacheVersion = 1;

void write_descriptor_cache(const std::filesystem::path& path, const PipelineConfig& cfg,
                            std::span<const ImageDescriptor> descriptors);

// Throws Error{Io} if the file cannot be read and Error{Parse} if it is
// truncated or its header does not match `cfg`.
std::vector<ImageDescriptor> read_descriptor_cache(const std::filesystem::path& path,
                                                   const PipelineConfig& cfg);

ImageDescriptor round_to_cache_precision(const ImageDescriptor& desc);

}  // namespace convseq
