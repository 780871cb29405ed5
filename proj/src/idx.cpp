#include "posthoc/idx.hpp"

#include <cstdint>
#include <fstream>

namespace posthoc {

namespace {

struct IdxPayload {
  std::vector<std::uint32_t> dims;
  std::vector<unsigned char> bytes;
};

IdxPayload read_idx(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IdxError("cannot open " + path);
  unsigned char magic[4];
  if (!in.read(reinterpret_cast<char*>(magic), 4)) throw IdxTruncated(path + ": truncated magic");
  if (magic[0] != 0 || magic[1] != 0) throw IdxBadMagic(path + ": bad magic prefix");
  if (magic[2] != 0x08) throw IdxBadMagic(path + ": unsupported element type (only unsigned byte 0x08)");
  const int ndim = magic[3];
  if (ndim < 1) throw IdxBadMagic(path + ": zero-dimensional file");

  IdxPayload out;
  std::size_t total = 1;
  for (int i = 0; i < ndim; ++i) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw IdxTruncated(path + ": truncated dimension header");
    const std::uint32_t d = (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
                            (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
    out.dims.push_back(d);
    total *= d;
  }
  out.bytes.resize(total);
  if (!in.read(reinterpret_cast<char*>(out.bytes.data()), static_cast<std::streamsize>(total)))
    throw IdxTruncated(path + ": payload shorter than product of dimensions");
  return out;
}

}  // namespace

Eigen::MatrixXd read_idx_images(const std::string& path) {
  const IdxPayload payload = read_idx(path);
  if (payload.dims.size() != 3)
    throw IdxDimensionMismatch(path + ": expected 3 dimensions for images, got " +
                               std::to_string(payload.dims.size()));
  const std::size_t n = payload.dims[0];
  const std::size_t pixels = std::size_t(payload.dims[1]) * payload.dims[2];
  Eigen::MatrixXd images(n, pixels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < pixels; ++j)
      images(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          payload.bytes[i * pixels + j] / 255.0;
  return images;
}

std::vector<int> read_idx_labels(const std::string& path) {
  const IdxPayload payload = read_idx(path);
  if (payload.dims.size() != 1)
    throw IdxDimensionMismatch(path + ": expected 1 dimension for labels, got " +
                               std::to_string(payload.dims.size()));
  std::vector<int> labels(payload.bytes.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = payload.bytes[i];
    if (labels[i] >= 10) throw IdxError(path + ": label " + std::to_string(labels[i]) + " out of [0, 10)");
  }
  return labels;
}

}  // namespace posthoc
