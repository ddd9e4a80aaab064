#include "convseq/imaging.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "convseq/error.hpp"

namespace convseq {

GrayImage to_luminance(const Raster& raster) {
  if (raster.width == 0 || raster.height == 0) {
    throw decode_error("image has zero dimensions");
  }
  if (raster.channels != 1 && raster.channels != 3) {
    throw decode_error(fmt::format("unsupported channel count {}", raster.channels));
  }
  const std::size_t pixels = raster.width * raster.height;
  if (raster.samples.size() != pixels * raster.channels) {
    throw decode_error(fmt::format("raster holds {} samples, expected {}",
                                   raster.samples.size(), pixels * raster.channels));
  }

  GrayImage out(raster.width, raster.height);
  auto dst = out.data();
  if (raster.channels == 1) {
    std::copy(raster.samples.begin(), raster.samples.end(), dst.begin());
    return out;
  }
  for (std::size_t i = 0; i < pixels; ++i) {
    const unsigned r = raster.samples[3 * i];
    const unsigned g = raster.samples[3 * i + 1];
    const unsigned b = raster.samples[3 * i + 2];
    dst[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
  return out;
}

namespace {

struct Tap {
  std::size_t lo;
  std::size_t hi;
  double frac;
};

std::vector<Tap> bilinear_taps(std::size_t src, std::size_t dst) {
  std::vector<Tap> taps(dst);
  const double scale = static_cast<double>(src) / static_cast<double>(dst);
  const double last = static_cast<double>(src - 1);
  for (std::size_t i = 0; i < dst; ++i) {
    double s = (static_cast<double>(i) + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, last);
    const auto lo = static_cast<std::size_t>(std::floor(s));
    taps[i] = {lo, std::min(lo + 1, src - 1), s - static_cast<double>(lo)};
  }
  return taps;
}

}  // namespace

GrayImage resize_bilinear(const GrayImage& src, std::size_t width, std::size_t height) {
  if (src.empty() || width == 0 || height == 0) {
    throw decode_error("cannot resample an empty image");
  }
  if (src.width() == width && src.height() == height) return src;

  const auto xs = bilinear_taps(src.width(), width);
  const auto ys = bilinear_taps(src.height(), height);
  GrayImage out(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    const Tap& ty = ys[y];
    for (std::size_t x = 0; x < width; ++x) {
      const Tap& tx = xs[x];
      const double top = (1.0 - tx.frac) * src(tx.lo, ty.lo) + tx.frac * src(tx.hi, ty.lo);
      const double bottom = (1.0 - tx.frac) * src(tx.lo, ty.hi) + tx.frac * src(tx.hi, ty.hi);
      const double v = (1.0 - ty.frac) * top + ty.frac * bottom;
      out(x, y) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
    }
  }
  return out;
}

GrayImage standardize(const Raster& raster, const PipelineConfig& cfg) {
  return resize_bilinear(to_luminance(raster), cfg.image_width, cfg.image_height);
}

GradientMap compute_gradients(const GrayImage& img) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  GradientMap gm{Grid<double>(w, h), Grid<double>(w, h)};
  if (img.empty()) return gm;

  constexpr double kDegrees = 180.0 / std::numbers::pi;
  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t up = y == 0 ? 0 : y - 1;
    const std::size_t down = std::min(y + 1, h - 1);
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t left = x == 0 ? 0 : x - 1;
      const std::size_t right = std::min(x + 1, w - 1);
      double gx = static_cast<double>(img(right, y)) - static_cast<double>(img(left, y));
      double gy = static_cast<double>(img(x, down)) - static_cast<double>(img(x, up));
      if (gx == 0.0 && gy == 0.0) continue;

      gm.magnitude(x, y) = std::sqrt(gx * gx + gy * gy);
      // Fold into the upper half-plane before atan2 so that (gx, gy) and
      // (-gx, -gy) give bit-identical angles.
      if (gy < 0.0 || (gy == 0.0 && gx < 0.0)) {
        gx = -gx;
        gy = -gy;
      }
      double angle = std::atan2(gy, gx) * kDegrees;
      if (angle >= 180.0) angle = 0.0;
      gm.orientation(x, y) = angle;
    }
  }
  return gm;
}

namespace {

// Incremental entropy over a sliding window: H = log2(n) - (1/n) sum c log2 c.
class WindowEntropy {
 public:
  explicit WindowEntropy(std::size_t max_count) : c_log_c_delta_(max_count + 1) {
    for (std::size_t c = 0; c <= max_count; ++c) {
      const double next = static_cast<double>(c + 1);
      const double cur = static_cast<double>(c);
      c_log_c_delta_[c] = next * std::log2(next) - (c == 0 ? 0.0 : cur * std::log2(cur));
    }
  }

  void reset() {
    counts_.fill(0);
    total_ = 0;
    distinct_ = 0;
    sum_c_log_c_ = 0.0;
  }

  void add(std::uint8_t v) {
    const std::uint32_t c = counts_[v]++;
    if (c == 0) ++distinct_;
    sum_c_log_c_ += c_log_c_delta_[c];
    ++total_;
  }

  void remove(std::uint8_t v) {
    const std::uint32_t c = --counts_[v];
    if (c == 0) --distinct_;
    sum_c_log_c_ -= c_log_c_delta_[c];
    --total_;
  }

  double value() const {
    if (distinct_ <= 1) return 0.0;
    const double n = static_cast<double>(total_);
    return std::clamp(std::log2(n) - sum_c_log_c_ / n, 0.0, 8.0);
  }

 private:
  std::array<std::uint32_t, 256> counts_{};
  std::size_t total_ = 0;
  std::size_t distinct_ = 0;
  double sum_c_log_c_ = 0.0;
  std::vector<double> c_log_c_delta_;
};

}  // namespace

EntropyMap compute_entropy_map(const GrayImage& img, std::size_t radius) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  EntropyMap em{Grid<double>(w, h)};
  if (img.empty()) return em;

  const std::size_t side = 2 * radius + 1;
  WindowEntropy window(side * side);

  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t y0 = y >= radius ? y - radius : 0;
    const std::size_t y1 = std::min(y + radius, h - 1);
    auto add_column = [&](std::size_t x) {
      for (std::size_t yy = y0; yy <= y1; ++yy) window.add(img(x, yy));
    };
    auto remove_column = [&](std::size_t x) {
      for (std::size_t yy = y0; yy <= y1; ++yy) window.remove(img(x, yy));
    };

    window.reset();
    for (std::size_t x = 0; x <= std::min(radius, w - 1); ++x) add_column(x);
    for (std::size_t x = 0; x < w; ++x) {
      if (x > 0) {
        if (x + radius < w) add_column(x + radius);
        if (x > radius) remove_column(x - radius - 1);
      }
      em.values(x, y) = window.value();
    }
  }
  return em;
}

EntropyMap compute_entropy_map(const GrayImage& img, const PipelineConfig& cfg) {
  return compute_entropy_map(img, cfg.entropy_radius);
}

double image_entropy_scalar(const EntropyMap& em) {
  if (em.values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : em.values.data()) sum += v;
  const double denom = static_cast<double>(em.values.size()) * 8.0;
  return std::clamp(sum / denom, 0.0, 1.0);
}

}  // namespace convseq
