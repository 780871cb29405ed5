#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "posthoc/idx.hpp"
#include "posthoc/log_io.hpp"
#include "posthoc/rng.hpp"

using namespace posthoc;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> idx_image_header(std::uint32_t n, std::uint32_t rows, std::uint32_t cols) {
  std::vector<std::uint8_t> bytes{0, 0, 0x08, 3};
  for (std::uint32_t v : {n, rows, cols})
    for (int shift = 24; shift >= 0; shift -= 8)
      bytes.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
  return bytes;
}

}  // namespace

TEST_CASE("idx image round trip with big-endian dimensions") {
  auto bytes = idx_image_header(2, 2, 2);
  for (std::uint8_t v : {0, 51, 102, 153, 204, 255, 10, 20}) bytes.push_back(v);
  const auto path = temp_file("posthoc_idx_images");
  write_bytes(path, bytes);
  const Eigen::MatrixXd images = read_idx_images(path.string());
  REQUIRE(images.rows() == 2);
  REQUIRE(images.cols() == 4);
  CHECK(images(0, 0) == doctest::Approx(0.0));
  CHECK(images(0, 1) == doctest::Approx(51.0 / 255.0));
  CHECK(images(1, 1) == doctest::Approx(1.0));
  CHECK(images(1, 3) == doctest::Approx(20.0 / 255.0));
}

TEST_CASE("idx error taxonomy") {
  SUBCASE("bad magic") {
    const auto path = temp_file("posthoc_idx_badmagic");
    write_bytes(path, {0, 1, 0x08, 3, 0, 0, 0, 0});
    CHECK_THROWS_AS(read_idx_images(path.string()), IdxBadMagic);
  }
  SUBCASE("wrong element type") {
    const auto path = temp_file("posthoc_idx_badtype");
    write_bytes(path, {0, 0, 0x0D, 3, 0, 0, 0, 0});
    CHECK_THROWS_AS(read_idx_images(path.string()), IdxBadMagic);
  }
  SUBCASE("truncated payload") {
    auto bytes = idx_image_header(2, 2, 2);
    bytes.push_back(1);  // 1 byte instead of 8
    const auto path = temp_file("posthoc_idx_truncated");
    write_bytes(path, bytes);
    CHECK_THROWS_AS(read_idx_images(path.string()), IdxTruncated);
  }
  SUBCASE("labels passed to the image reader") {
    const auto path = temp_file("posthoc_idx_wrongdims");
    write_bytes(path, {0, 0, 0x08, 1, 0, 0, 0, 1, 5});
    CHECK_THROWS_AS(read_idx_images(path.string()), IdxDimensionMismatch);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_idx_images("/nonexistent/idx"), IdxError);
  }
}

TEST_CASE("idx labels reject out-of-range values") {
  const auto path = temp_file("posthoc_idx_labels");
  write_bytes(path, {0, 0, 0x08, 1, 0, 0, 0, 3, 0, 9, 7});
  const auto labels = read_idx_labels(path.string());
  REQUIRE(labels.size() == 3);
  CHECK(labels[1] == 9);

  write_bytes(path, {0, 0, 0x08, 1, 0, 0, 0, 1, 10});
  CHECK_THROWS_AS(read_idx_labels(path.string()), IdxError);
}

TEST_CASE("canonical mnist files have the published sizes" *
          doctest::skip(!std::filesystem::exists("/root/data/mnist/train-images-idx3-ubyte") &&
                        std::getenv("POSTHOC_DATA_DIR") == nullptr)) {
  std::string dir = "/root/data/mnist";
  if (const char* env = std::getenv("POSTHOC_DATA_DIR")) dir = env;
  CHECK(read_idx_labels(dir + "/train-labels-idx1-ubyte").size() == 60000);
  CHECK(read_idx_labels(dir + "/t10k-labels-idx1-ubyte").size() == 10000);
}

TEST_CASE("interaction log survives a 1000-record fuzz round trip") {
  Rng rng(61);
  std::vector<Interaction> log;
  for (int i = 0; i < 1000; ++i) {
    Interaction x;
    const int dc = 1 + rng.uniform_int(5);
    x.context.resize(dc);
    for (int j = 0; j < dc; ++j) x.context(j) = rng.gaussian() * std::pow(10.0, rng.uniform_int(7) - 3);
    x.action = rng.uniform_int(10);
    x.loss = rng.gaussian();
    if (rng.uniform() < 0.7) {
      x.posthoc.resize(1 + rng.uniform_int(3));
      for (int j = 0; j < x.posthoc.size(); ++j) x.posthoc(j) = rng.gaussian();
    }
    if (rng.uniform() < 0.5) {
      Eigen::VectorXd full(4);
      for (int j = 0; j < 4; ++j) full(j) = rng.uniform();
      x.full_loss = full;
    }
    if (rng.uniform() < 0.5) x.propensity = rng.uniform();
    if (rng.uniform() < 0.5) x.group_key = "group-" + std::to_string(rng.uniform_int(5));
    log.push_back(std::move(x));
  }

  const auto path = temp_file("posthoc_log_roundtrip.jsonl").string();
  write_interaction_log(path, log);
  const auto back = read_interaction_log(path);
  REQUIRE(back.size() == log.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    CHECK(back[i].context == log[i].context);  // bit-exact
    CHECK(back[i].action == log[i].action);
    CHECK(back[i].loss == log[i].loss);
    CHECK(back[i].posthoc == log[i].posthoc);
    CHECK(back[i].full_loss.has_value() == log[i].full_loss.has_value());
    if (log[i].full_loss) CHECK(*back[i].full_loss == *log[i].full_loss);
    CHECK(back[i].propensity == log[i].propensity);
    CHECK(back[i].group_key == log[i].group_key);
  }
}

TEST_CASE("log reader reports the failing line") {
  const auto path = temp_file("posthoc_log_bad.jsonl").string();
  {
    std::ofstream out(path);
    out << R"({"step":0,"context":[1.0],"action":0,"loss":0.5})" << "\n";
    out << "{not json}\n";
  }
  try {
    read_interaction_log(path);
    FAIL("expected a parse error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}
