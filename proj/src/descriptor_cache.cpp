#include "convseq/descriptor_cache.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "convseq/error.hpp"

namespace convseq {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'S', 'Q', 'D'};

void put_u32(std::vector<char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint32_t narrow(std::size_t v, const char* what) {
  if (v > UINT32_MAX) throw config_error(fmt::format("{} too large for cache header", what));
  return static_cast<std::uint32_t>(v);
}

std::array<std::uint32_t, 5> geometry(const PipelineConfig& cfg) {
  return {narrow(cfg.image_width, "W1"), narrow(cfg.image_height, "H1"),
          narrow(cfg.cell_width, "W2"), narrow(cfg.cell_height, "H2"), narrow(cfg.bins, "L")};
}

}  // namespace

void write_descriptor_cache(const std::filesystem::path& path, const PipelineConfig& cfg,
                            std::span<const ImageDescriptor> descriptors) {
  const std::size_t regions = cfg.region_count();
  const std::size_t depth = cfg.descriptor_depth();

  std::vector<char> buf;
  buf.reserve(32 + descriptors.size() * regions * depth * 4);
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put_u32(buf, kDescriptorCacheVersion);
  for (std::uint32_t g : geometry(cfg)) put_u32(buf, g);
  put_u32(buf, narrow(descriptors.size(), "image count"));

  for (const auto& desc : descriptors) {
    if (desc.regions() != regions || desc.depth() != depth) {
      throw config_error(fmt::format("descriptor is {}x{}, cache expects {}x{}", desc.regions(),
                                     desc.depth(), regions, depth));
    }
    for (double v : desc.values()) {
      put_u32(buf, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw io_error(fmt::format("cannot open {} for writing", path.string()));
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!os) throw io_error(fmt::format("failed writing {}", path.string()));
}

std::vector<ImageDescriptor> read_descriptor_cache(const std::filesystem::path& path,
                                                   const PipelineConfig& cfg) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error(fmt::format("cannot open {}", path.string()));
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)),
                                       std::istreambuf_iterator<char>());

  constexpr std::size_t kHeader = 4 + 4 + 5 * 4 + 4;
  if (buf.size() < kHeader) throw parse_error(fmt::format("{}: truncated header", path.string()));
  if (std::memcmp(buf.data(), kMagic.data(), kMagic.size()) != 0) {
    throw parse_error(fmt::format("{}: not a descriptor cache", path.string()));
  }
  const std::uint32_t version = get_u32(buf.data() + 4);
  if (version != kDescriptorCacheVersion) {
    throw parse_error(fmt::format("{}: unsupported cache version {}", path.string(), version));
  }
  const auto expected = geometry(cfg);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (get_u32(buf.data() + 8 + 4 * i) != expected[i]) {
      throw parse_error(fmt::format("{}: cache geometry does not match the configuration", path.string()));
    }
  }
  const std::size_t count = get_u32(buf.data() + 28);
  const std::size_t regions = cfg.region_count();
  const std::size_t depth = cfg.descriptor_depth();
  const std::size_t per_image = regions * depth;
  if (buf.size() != kHeader + count * per_image * 4) {
    throw parse_error(fmt::format("{}: payload size does not match {} images", path.string(), count));
  }

  std::vector<ImageDescriptor> out;
  out.reserve(count);
  const unsigned char* p = buf.data() + kHeader;
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<double> values(per_image);
    for (double& v : values) {
      v = static_cast<double>(std::bit_cast<float>(get_u32(p)));
      p += 4;
    }
    out.emplace_back(regions, depth, std::move(values));
  }
  return out;
}

ImageDescriptor round_to_cache_precision(const ImageDescriptor& desc) {
  std::vector<double> values(desc.values().begin(), desc.values().end());
  for (double& v : values) v = static_cast<double>(static_cast<float>(v));
  return {desc.regions(), desc.depth(), std::move(values)};
}

}  // namespace convseq
