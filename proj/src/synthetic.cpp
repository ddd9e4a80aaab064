#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "convseq/datasetio.hpp"
#include "convseq/error.hpp"

namespace convseq {

namespace {

// Distribution code is written out by hand: the <random> distributions are
// not specified bit-for-bit across standard libraries, the engines are.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = unit();
    while (u1 <= 0.0) u1 = unit();
    const double u2 = unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(theta);
    has_spare_ = true;
    return radius * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// One textured motif: two oriented gratings, a few rectangles and fine
// texture, kept inside [20, 165] so a 1.5x gain does not saturate.
Grid<double> make_motif(std::uint64_t seed, std::size_t motif, std::size_t width,
                        std::size_t height) {
  Rng rng(mix(seed, 1000 + motif));
  Grid<double> m(width, height);
  const double base = rng.uniform(70.0, 110.0);

  struct Grating {
    double kx, ky, phase, amp;
  };
  Grating gratings[2];
  for (auto& g : gratings) {
    const double period = rng.uniform(6.0, 40.0);
    const double angle = rng.uniform(0.0, std::numbers::pi);
    const double freq = 2.0 * std::numbers::pi / period;
    g = {freq * std::cos(angle), freq * std::sin(angle), rng.uniform(0.0, 2.0 * std::numbers::pi),
         rng.uniform(10.0, 25.0)};
  }
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      double v = base;
      for (const auto& g : gratings) {
        v += g.amp * std::sin(g.kx * static_cast<double>(x) + g.ky * static_cast<double>(y) + g.phase);
      }
      m(x, y) = v;
    }
  }
  const std::size_t rects = 3 + rng.index(4);
  for (std::size_t r = 0; r < rects; ++r) {
    const std::size_t rw = 4 + rng.index(width / 2);
    const std::size_t rh = 4 + rng.index(height / 2);
    const std::size_t x0 = rng.index(width);
    const std::size_t y0 = rng.index(height);
    const double offset = rng.uniform(-35.0, 35.0);
    for (std::size_t y = y0; y < std::min(y0 + rh, height); ++y) {
      for (std::size_t x = x0; x < std::min(x0 + rw, width); ++x) m(x, y) += offset;
    }
  }
  for (double& v : m.data()) v = std::clamp(v + rng.uniform(-6.0, 6.0), 20.0, 165.0);
  return m;
}

double sample_row(const GrayImage& world, double x, std::size_t y) {
  const double last = static_cast<double>(world.width() - 1);
  x = std::clamp(x, 0.0, last);
  const auto x0 = static_cast<std::size_t>(std::floor(x));
  const std::size_t x1 = std::min(x0 + 1, world.width() - 1);
  const double f = x - static_cast<double>(x0);
  if (f == 0.0) return world(x0, y);
  return (1.0 - f) * world(x0, y) + f * world(x1, y);
}

}  // namespace

SyntheticPair generate_synthetic_traverse(const SyntheticOptions& o) {
  if (o.frames == 0) throw config_error("synthetic traverse needs at least one frame");
  if (o.width == 0 || o.height == 0 || o.tile_px == 0 || o.motifs == 0) {
    throw config_error("synthetic frame, tile and motif sizes must be positive");
  }
  const SyntheticVariation& var = o.variation;
  if (!(var.brightness_gain > 0.0) || var.noise_level < 0.0) {
    throw config_error("synthetic brightness gain must be positive and noise non-negative");
  }

  const auto margin = static_cast<std::size_t>(std::ceil(std::abs(var.shift_px))) + 1;
  const std::size_t world_width = 2 * margin + (o.frames - 1) * o.step_px + o.width;

  std::vector<Grid<double>> motifs;
  motifs.reserve(o.motifs);
  for (std::size_t m = 0; m < o.motifs; ++m) {
    motifs.push_back(make_motif(o.seed, m, o.tile_px, o.height));
  }

  // Tiles are laid out in absolute world coordinates (reference frame 0 starts
  // at x = 0), so the reference traverse does not depend on the variation.
  GrayImage world(world_width, o.height);
  for (std::size_t wx = 0; wx < world_width; ++wx) {
    const auto absolute = static_cast<std::int64_t>(wx) - static_cast<std::int64_t>(margin);
    const auto tile_px = static_cast<std::int64_t>(o.tile_px);
    const std::int64_t tile = absolute >= 0 ? absolute / tile_px : -((-absolute - 1) / tile_px) - 1;
    const std::size_t within = static_cast<std::size_t>(absolute - tile * tile_px);
    const Grid<double>& motif =
        motifs[mix(o.seed, 0x100000000ull + static_cast<std::uint64_t>(tile + (1ll << 31))) %
               o.motifs];
    for (std::size_t y = 0; y < o.height; ++y) {
      world(wx, y) = static_cast<std::uint8_t>(std::lround(motif(within, y)));
    }
  }

  SyntheticPair pair;
  pair.reference.reserve(o.frames);
  pair.query.reserve(o.frames);
  Rng noise(mix(o.seed, 2));
  for (std::size_t i = 0; i < o.frames; ++i) {
    const std::size_t x_ref = margin + i * o.step_px;
    GrayImage ref(o.width, o.height);
    for (std::size_t y = 0; y < o.height; ++y) {
      for (std::size_t x = 0; x < o.width; ++x) ref(x, y) = world(x_ref + x, y);
    }
    pair.reference.push_back(std::move(ref));

    if (var.is_identity()) {
      pair.query.push_back(pair.reference.back());
      continue;
    }
    GrayImage q(o.width, o.height);
    const double x_query = static_cast<double>(x_ref) + var.shift_px;
    for (std::size_t y = 0; y < o.height; ++y) {
      for (std::size_t x = 0; x < o.width; ++x) {
        double v = var.brightness_gain * sample_row(world, x_query + static_cast<double>(x), y);
        if (var.noise_level > 0.0) v += var.noise_level * noise.normal();
        q(x, y) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      }
    }
    pair.query.push_back(std::move(q));
  }
  pair.ground_truth = identity_ground_truth(o.frames, 2);
  return pair;
}

void write_synthetic_dataset(const fs::path& dir, const SyntheticPair& pair) {
  std::error_code ec;
  fs::create_directories(dir / "query", ec);
  fs::create_directories(dir / "reference", ec);
  if (ec) throw io_error(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  for (std::size_t i = 0; i < pair.query.size(); ++i) {
    write_png(dir / "query" / fmt::format("{:05d}.png", i), pair.query[i]);
  }
  for (std::size_t i = 0; i < pair.reference.size(); ++i) {
    write_png(dir / "reference" / fmt::format("{:05d}.png", i), pair.reference[i]);
  }
  write_ground_truth(dir / "ground_truth.csv", pair.ground_truth);
}

}  // namespace convseq
