#pragma once

// Integer bookkeeping for fiber-component multiplicities.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace torfib {

class multiplicity_vector {
public:
  multiplicity_vector(std::initializer_list<std::int64_t> mu) : multiplicity_vector(std::vector<std::int64_t>(mu)) {}

  explicit multiplicity_vector(std::vector<std::int64_t> mu) : mu_(std::move(mu)) {
    if (mu_.empty()) throw domain_error("multiplicity vector must be nonempty");
    for (auto m : mu_) {
      if (m < 1) throw domain_error("multiplicities must be positive, got " + std::to_string(m));
    }
  }

  [[nodiscard]] const std::vector<std::int64_t>& values() const noexcept { return mu_; }
  [[nodiscard]] std::size_t size() const noexcept { return mu_.size(); }
  [[nodiscard]] std::int64_t operator[](std::size_t i) const { return mu_[i]; }
  [[nodiscard]] auto begin() const noexcept { return mu_.begin(); }
  [[nodiscard]] auto end() const noexcept { return mu_.end(); }

  [[nodiscard]] std::int64_t min() const { return *std::min_element(mu_.begin(), mu_.end()); }

  friend bool operator==(const multiplicity_vector&, const multiplicity_vector&) = default;

private:
  std::vector<std::int64_t> mu_;
};

struct bezout_certificate {
  std::vector<std::int64_t> weights;
  std::int64_t gcd;

  friend bool operator==(const bezout_certificate&, const bezout_certificate&) = default;
};

struct admissibility {
  std::int64_t min;
  std::int64_t gcd;
  bool admissible; // min == gcd
};

namespace detail {

// (g, s, t) with a*s + b*t = g = gcd(a, b) >= 0.
constexpr std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    old_s -= q * s;
    old_t -= q * t;
    std::swap(old_r, r);
    std::swap(old_s, s);
    std::swap(old_t, t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("Bezout weight overflows 64-bit integer");
  return r;
}

} // namespace detail

inline std::int64_t gcd_vector(const multiplicity_vector& mu) {
  std::int64_t g = 0;
  for (auto m : mu) g = std::gcd(g, m);
  return g;
}

/// Weights a_i with sum a_i mu_i = gcd(mu), by a left fold of the extended
/// Euclidean algorithm over the entries. No normalization is applied, so the
/// output is a deterministic function of the input order.
inline bezout_certificate bezout_weights(const multiplicity_vector& mu) {
  bezout_certificate cert{{1}, mu[0]};
  cert.weights.reserve(mu.size());
  for (std::size_t i = 1; i < mu.size(); ++i) {
    auto [g, s, t] = detail::extended_gcd(cert.gcd, mu[i]);
    for (auto& w : cert.weights) w = detail::checked_mul(w, s);
    cert.weights.push_back(t);
    cert.gcd = g;
  }
  return cert;
}

/// Multiplicities after the base change t = u^d.
inline multiplicity_vector ramified_base_change(const multiplicity_vector& mu, std::int64_t d) {
  if (d < 1) throw domain_error("base change order must be positive");
  std::vector<std::int64_t> out;
  out.reserve(mu.size());
  for (auto m : mu) {
    if (m % d != 0) {
      throw not_divisible("multiplicity " + std::to_string(m) + " is not divisible by " + std::to_string(d));
    }
    out.push_back(m / d);
  }
  return multiplicity_vector(std::move(out));
}

inline multiplicity_vector scale(const multiplicity_vector& mu, std::int64_t d) {
  std::vector<std::int64_t> out;
  out.reserve(mu.size());
  for (auto m : mu) out.push_back(detail::checked_mul(m, d));
  return multiplicity_vector(std::move(out));
}

/// A multiplicity vector can belong to a singular fiber of a torus fibration
/// over a curve only if its minimum equals its gcd.
inline admissibility admissibility_report(const multiplicity_vector& mu) {
  const auto g = gcd_vector(mu);
  const auto m = mu.min();
  return {m, g, m == g};
}

} // namespace torfib
