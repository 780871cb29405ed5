#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace posthoc {

struct IdxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IdxBadMagic : IdxError {
  using IdxError::IdxError;
};
struct IdxTruncated : IdxError {
  using IdxError::IdxError;
};
struct IdxDimensionMismatch : IdxError {
  using IdxError::IdxError;
};

// Reads an IDX file of unsigned bytes (magic type 0x08), row-major flattened,
// pixels scaled to [0,1] by division by 255. One row per image.
Eigen::MatrixXd read_idx_images(const std::string& path);

// Reads an IDX label file; every label must be in [0, 10).
std::vector<int> read_idx_labels(const std::string& path);

}  // namespace posthoc
