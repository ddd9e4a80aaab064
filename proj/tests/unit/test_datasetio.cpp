#include <doctest.h>

#include <fstream>
#include <random>
#include <regex>
#include <sstream>
#include <variant>

#include "convseq/datasetio.hpp"
#include "convseq/error.hpp"
#include "support.hpp"

using namespace convseq;
using namespace convseq::testing;

namespace {

template <typename Fn>
ErrorCategory category_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  return ErrorCategory::Internal;
}

// Tokenize into digit and non-digit runs and compare the token lists, numbers
// by value (as unsigned long long, enough for the names used here).
bool natural_oracle(const std::string& a, const std::string& b) {
  using Token = std::variant<unsigned long long, std::string>;
  auto tokens = [](const std::string& s) {
    static const std::regex run("[0-9]+|[^0-9]+");
    std::vector<Token> out;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), run); it != std::sregex_iterator(); ++it) {
      const std::string t = it->str();
      if (std::isdigit(static_cast<unsigned char>(t[0]))) {
        out.emplace_back(std::stoull(t));
      } else {
        out.emplace_back(t);
      }
    }
    return out;
  };
  const auto ta = tokens(a);
  const auto tb = tokens(b);
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    if (ta[i].index() != tb[i].index()) {
      // Digits sort before letters and '_' in ASCII; names here never mix '.' ahead of a digit.
      const char ca = ta[i].index() == 0 ? '0' : std::get<1>(ta[i])[0];
      const char cb = tb[i].index() == 0 ? '0' : std::get<1>(tb[i])[0];
      return ca < cb;
    }
    if (ta[i].index() == 0) {
      if (std::get<0>(ta[i]) != std::get<0>(tb[i])) return std::get<0>(ta[i]) < std::get<0>(tb[i]);
    } else {
      const auto& sa = std::get<1>(ta[i]);
      const auto& sb = std::get<1>(tb[i]);
      if (sa == sb) continue;
      // A shorter run that is a prefix of the longer one continues with a digit
      // in the other name.
      const std::size_t n = std::min(sa.size(), sb.size());
      if (sa.compare(0, n, sb, 0, n) != 0) return sa.compare(0, n, sb, 0, n) < 0;
      const bool a_short = sa.size() < sb.size();
      const char next = a_short ? sb[n] : sa[n];
      const bool a_ends = a_short ? i + 1 == ta.size() : false;
      const bool b_ends = a_short ? false : i + 1 == tb.size();
      if (a_ends) return true;
      if (b_ends) return false;
      return a_short ? '0' < next : next < '0';
    }
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  return a < b;
}

void touch(const fs::path& p, const std::string& content = "x") {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("natural order of frame names") {
  TempDir dir;
  for (const char* name : {"img2.png", "img10.png", "img1.png"}) {
    write_png(dir / name, GrayImage(4, 4, 9));
  }
  const Traverse t = load_traverse(dir.path());
  REQUIRE(t.frames.size() == 3);
  CHECK(t.frames[0].filename() == "img1.png");
  CHECK(t.frames[1].filename() == "img2.png");
  CHECK(t.frames[2].filename() == "img10.png");

  CHECK(natural_less("frame007", "frame10"));
  CHECK_FALSE(natural_less("frame10", "frame007"));
  CHECK(natural_less("a01", "a1"));  // equal numbers: raw string decides
  CHECK_FALSE(natural_less("same", "same"));
}

TEST_CASE("natural order agrees with a token-based sorter on 100 names") {
  std::mt19937_64 rng(81);
  const std::vector<std::string> prefixes = {"img", "frame_", "Image", "img_a", "cam"};
  std::vector<std::string> names;
  while (names.size() < 100) {
    std::string n = prefixes[uniform_index(rng, 0, prefixes.size() - 1)] +
                    std::to_string(uniform_index(rng, 0, 5000));
    if (uniform_real(rng) < 0.3) n += "_" + std::to_string(uniform_index(rng, 0, 30));
    n += ".png";
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  }
  TempDir dir;
  for (const auto& n : names) touch(dir / n);
  const Traverse t = load_traverse(dir.path());
  REQUIRE(t.frames.size() == 100);
  std::vector<std::string> expect = names;
  std::sort(expect.begin(), expect.end(), natural_oracle);
  for (std::size_t i = 0; i < 100; ++i) CHECK(t.frames[i].filename().string() == expect[i]);

  for (int trial = 0; trial < 2000; ++trial) {
    const auto& a = names[uniform_index(rng, 0, 99)];
    const auto& b = names[uniform_index(rng, 0, 99)];
    CHECK(natural_less(a, b) == natural_oracle(a, b));
  }
}

TEST_CASE("traverse listing errors and skipped files") {
  TempDir dir;
  CHECK(category_of([&] { load_traverse(dir / "missing"); }) == ErrorCategory::Dataset);
  CHECK(category_of([&] { load_traverse(dir.path()); }) == ErrorCategory::Dataset);
  touch(dir / "notes.txt");
  CHECK(category_of([&] { load_traverse(dir.path()); }) == ErrorCategory::Dataset);
  touch(dir / "a.PNG");
  fs::create_directory(dir / "sub.png");
  const Traverse t = load_traverse(dir.path());
  CHECK(t.frames.size() == 1);
  CHECK(t.skipped >= 1);
  CHECK(is_supported_image("x.JPeG"));
  CHECK(is_supported_image("x.tif"));
  CHECK_FALSE(is_supported_image("x.gif"));
}

TEST_CASE("decoding gray PNG and colour PPM") {
  std::mt19937_64 rng(82);
  TempDir dir;
  const GrayImage img = random_image(rng, 13, 7);
  write_png(dir / "g.png", img);
  const Raster g = decode_image(dir / "g.png");
  CHECK(g.channels == 1);
  CHECK(g.width == 13);
  CHECK(g.height == 7);
  CHECK(std::equal(g.samples.begin(), g.samples.end(), img.data().begin()));

  std::string ppm = "P6\n2 1\n255\n";
  ppm += std::string{char(255), char(0), char(10), char(1), char(2), char(3)};
  touch(dir / "c.ppm", ppm);
  const Raster c = decode_image(dir / "c.ppm");
  CHECK(c.channels == 3);
  CHECK(c.samples == std::vector<std::uint8_t>{255, 0, 10, 1, 2, 3});

  touch(dir / "broken.png", "definitely not a png");
  CHECK(category_of([&] { decode_image(dir / "broken.png"); }) == ErrorCategory::Decode);
  CHECK(category_of([&] { write_png(dir / "no" / "such" / "dir.png", img); }) == ErrorCategory::Io);

  const Traverse t = load_traverse(dir.path());
  CHECK(category_of([&] { decode_traverse(t, 2); }) == ErrorCategory::Decode);
}

TEST_CASE("ground truth parsing") {
  const GroundTruth identity = load_ground_truth(std::nullopt, 50, 2);
  REQUIRE(identity.mapping.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) CHECK(identity.truth(i) == i);

  std::istringstream rows("query_index,reference_index\n# comment\n\n3,7\n 4 , 9 \n");
  const GroundTruth gt = parse_ground_truth(rows, 2);
  CHECK(gt.truth(3) == 7);
  CHECK(gt.truth(4) == 9);
  CHECK_FALSE(gt.truth(5).has_value());

  GroundTruth ten;
  ten.tolerance = 2;
  ten.mapping[0] = 10;
  CHECK(ten.is_correct(0, 12));
  CHECK_FALSE(ten.is_correct(0, 13));
  CHECK(ten.is_correct(0, 8));
  CHECK_FALSE(ten.is_correct(1, 10));

  for (const char* bad : {"1,2\nfoo,bar\n", "1,2,3\n", "1;2\n", "1,2\n1,3\n", "-1,2\n"}) {
    std::istringstream in(bad);
    try {
      parse_ground_truth(in, 2);
      FAIL("expected a parse error for " << bad);
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Parse);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  }
}

TEST_CASE("ground truth file round trip") {
  TempDir dir;
  GroundTruth gt;
  gt.tolerance = 1;
  gt.mapping = {{0, 4}, {1, 5}, {7, 2}};
  write_ground_truth(dir / "gt.csv", gt);
  const GroundTruth back = load_ground_truth(dir / "gt.csv", 99, 1);
  CHECK(back.mapping == gt.mapping);
  CHECK(back.tolerance == 1);
  CHECK(category_of([&] { load_ground_truth(dir / "none.csv", 3, 2); }) == ErrorCategory::Dataset);
  touch(dir / "bad.csv", "0,1\nnope\n");
  CHECK(category_of([&] { load_ground_truth(dir / "bad.csv", 3, 2); }) == ErrorCategory::Parse);
}

TEST_CASE("synthetic traverses") {
  SyntheticOptions opt;
  opt.seed = 7;
  opt.frames = 12;
  opt.width = 96;
  opt.height = 64;

  const SyntheticPair plain = generate_synthetic_traverse(opt);
  REQUIRE(plain.reference.size() == 12);
  CHECK(plain.reference == plain.query);
  CHECK(plain.ground_truth.mapping == identity_ground_truth(12, 2).mapping);
  CHECK(plain.reference[0].width() == 96);
  CHECK(plain.reference[0].height() == 64);
  CHECK(plain.reference[0] != plain.reference[1]);

  SyntheticOptions varied = opt;
  varied.variation = {16.0, 1.5, 4.0};
  const SyntheticPair a = generate_synthetic_traverse(varied);
  const SyntheticPair b = generate_synthetic_traverse(varied);
  CHECK(a.reference == b.reference);
  CHECK(a.query == b.query);
  CHECK(a.reference == plain.reference);
  CHECK(a.query != a.reference);

  SyntheticOptions other = varied;
  other.seed = 8;
  CHECK(generate_synthetic_traverse(other).reference != a.reference);

  double ref_mean = 0.0, query_mean = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    for (auto v : a.reference[i].data()) ref_mean += v;
    for (auto v : a.query[i].data()) query_mean += v;
  }
  CHECK(query_mean > 1.3 * ref_mean);
}

TEST_CASE("synthetic dataset on disk") {
  SyntheticOptions opt;
  opt.seed = 7;
  opt.frames = 50;
  opt.width = opt.height = 64;
  TempDir one, two;
  const SyntheticPair pair = generate_synthetic_traverse(opt);
  write_synthetic_dataset(one.path(), pair);
  write_synthetic_dataset(two.path(), generate_synthetic_traverse(opt));

  const Traverse q = load_traverse(one / "query");
  const Traverse r = load_traverse(one / "reference");
  CHECK(q.frames.size() == 50);
  CHECK(r.frames.size() == 50);
  CHECK(fs::exists(one / "ground_truth.csv"));
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(slurp(q.frames[i]) == slurp(two / "query" / q.frames[i].filename().string()));
    const Raster raster = decode_image(r.frames[i]);
    CHECK(std::equal(raster.samples.begin(), raster.samples.end(), pair.reference[i].data().begin()));
  }
  CHECK(slurp(one / "ground_truth.csv") == slurp(two / "ground_truth.csv"));
  CHECK(load_ground_truth(one / "ground_truth.csv", 50, 2).mapping == pair.ground_truth.mapping);
}
