#include "convseq/datasetio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "convseq/error.hpp"
#include "convseq/parallel.hpp"

namespace convseq {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string_view strip_zeros(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? std::string_view{} : digits.substr(first);
}

std::string lower_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      std::size_t je = j;
      while (je < b.size() && is_digit(b[je])) ++je;
      const auto na = strip_zeros(a.substr(i, ie - i));
      const auto nb = strip_zeros(b.substr(j, je - j));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) {
      return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
    }
    ++i;
    ++j;
  }
  const bool a_done = i == a.size();
  const bool b_done = j == b.size();
  if (a_done != b_done) return a_done;
  return a < b;
}

bool is_supported_image(const fs::path& p) {
  static constexpr std::string_view kExtensions[] = {".png", ".jpg", ".jpeg", ".bmp",
                                                     ".pgm", ".ppm", ".tif", ".tiff"};
  const std::string ext = lower_extension(p);
  return std::find(std::begin(kExtensions), std::end(kExtensions), ext) != std::end(kExtensions);
}

Traverse load_traverse(const fs::path& directory) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw dataset_error(fmt::format("traverse directory {} does not exist", directory.string()));
  }
  Traverse t;
  t.name = directory.filename().string();
  if (t.name.empty()) t.name = directory.parent_path().filename().string();
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    if (is_supported_image(entry.path())) {
      t.frames.push_back(entry.path());
    } else {
      ++t.skipped;
    }
  }
  if (t.frames.empty()) {
    throw dataset_error(fmt::format("traverse directory {} contains no images",
                                    directory.string()));
  }
  std::sort(t.frames.begin(), t.frames.end(), [](const fs::path& a, const fs::path& b) {
    return natural_less(a.filename().string(), b.filename().string());
  });
  return t;
}

Raster decode_image(const fs::path& path) {
  const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_ANYCOLOR);
  if (mat.empty() || mat.depth() != CV_8U) {
    throw decode_error(fmt::format("cannot decode {}", path.string()));
  }
  Raster r;
  r.width = static_cast<std::size_t>(mat.cols);
  r.height = static_cast<std::size_t>(mat.rows);
  const int ch = mat.channels();
  if (ch != 1 && ch != 3) {
    throw decode_error(fmt::format("{}: unsupported channel count {}", path.string(), ch));
  }
  r.channels = static_cast<std::size_t>(ch);
  r.samples.resize(r.width * r.height * r.channels);
  auto* out = r.samples.data();
  for (int y = 0; y < mat.rows; ++y) {
    const auto* row = mat.ptr<std::uint8_t>(y);
    if (ch == 1) {
      out = std::copy(row, row + mat.cols, out);
      continue;
    }
    for (int x = 0; x < mat.cols; ++x) {
      // OpenCV stores BGR.
      *out++ = row[3 * x + 2];
      *out++ = row[3 * x + 1];
      *out++ = row[3 * x];
    }
  }
  return r;
}

std::vector<Raster> decode_traverse(const Traverse& traverse, std::size_t threads) {
  std::vector<Raster> out(traverse.frames.size());
  parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = decode_image(traverse.frames[i]); });
  return out;
}

void write_png(const fs::path& path, const GrayImage& img) {
  cv::Mat mat(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC1);
  std::copy(img.data().begin(), img.data().end(), mat.ptr<std::uint8_t>(0));
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat, {cv::IMWRITE_PNG_COMPRESSION, 6});
  } catch (const cv::Exception& e) {
    throw io_error(fmt::format("cannot write {}: {}", path.string(), e.what()));
  }
  if (!ok) throw io_error(fmt::format("cannot write {}", path.string()));
}

std::optional<std::size_t> GroundTruth::truth(std::size_t query) const {
  auto it = mapping.find(query);
  if (it == mapping.end()) return std::nullopt;
  return it->second;
}

bool GroundTruth::is_correct(std::size_t query, std::size_t predicted) const {
  const auto t = truth(query);
  if (!t) return false;
  const std::size_t diff = predicted > *t ? predicted - *t : *t - predicted;
  return diff <= tolerance;
}

GroundTruth identity_ground_truth(std::size_t frames, std::size_t tolerance) {
  GroundTruth gt;
  gt.tolerance = tolerance;
  for (std::size_t i = 0; i < frames; ++i) gt.mapping.emplace_hint(gt.mapping.end(), i, i);
  return gt;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<std::size_t> parse_index(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

GroundTruth parse_ground_truth(std::istream& in, std::size_t tolerance) {
  GroundTruth gt;
  gt.tolerance = tolerance;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto comma = body.find(',');
    std::optional<std::size_t> q;
    std::optional<std::size_t> r;
    if (comma != std::string_view::npos && body.find(',', comma + 1) == std::string_view::npos) {
      q = parse_index(body.substr(0, comma));
      r = parse_index(body.substr(comma + 1));
    }
    if (!q || !r) {
      if (!seen_row && comma != std::string_view::npos &&
          std::isalpha(static_cast<unsigned char>(body.front()))) {
        seen_row = true;  // header
        continue;
      }
      throw parse_error(fmt::format("ground truth line {}: expected 'query_index,reference_index'",
                                    line_no));
    }
    seen_row = true;
    if (!gt.mapping.emplace(*q, *r).second) {
      throw parse_error(fmt::format("ground truth line {}: duplicate query index {}", line_no, *q));
    }
  }
  return gt;
}

GroundTruth load_ground_truth(const std::optional<fs::path>& file, std::size_t query_frames,
                              std::size_t tolerance) {
  if (!file) return identity_ground_truth(query_frames, tolerance);
  std::ifstream in(*file);
  if (!in) throw dataset_error(fmt::format("cannot open ground truth {}", file->string()));
  try {
    return parse_ground_truth(in, tolerance);
  } catch (const Error& e) {
    throw parse_error(fmt::format("{}: {}", file->string(), e.what()));
  }
}

void write_ground_truth(const fs::path& path, const GroundTruth& gt) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error(fmt::format("cannot write {}", path.string()));
  out << "query_index,reference_index\n";
  for (const auto& [q, r] : gt.mapping) out << q << ',' << r << '\n';
  if (!out) throw io_error(fmt::format("failed writing {}", path.string()));
}

}  // namespace convseq
