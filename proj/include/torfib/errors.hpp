#pragma once

#include <stdexcept>
#include <string>

namespace torfib {

// Base of every error raised by the library. Each subclass corresponds to one
// named failure mode so callers (notably the CLI) can map them to exit codes.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct weight_sum_error : error {
  using error::error;
};
struct lattice_mismatch : error {
  using error::error;
};
struct singular_curve : error {
  using error::error;
};
struct off_curve : error {
  using error::error;
};
struct not_divisible : error {
  using error::error;
};
struct degenerate_model : error {
  using error::error;
};
struct unclassified_valuations : error {
  using error::error;
};
struct unsupported_type : error {
  using error::error;
};
struct domain_error : error {
  using error::error;
};
struct gcd_error : error {
  using error::error;
};
struct lift_failure : error {
  using error::error;
};
struct overflow_error : error {
  using error::error;
};
// Malformed input document.
struct input_error : error {
  using error::error;
};

} // namespace torfib
