#pragma once

// Abelian torsor algebra.
//
// A torsor instance is any type exposing a ternary operation
//   mu(x, y, z)  (think x + y - z in any compatible group law)
// together with a distance used for equality up to tolerance. Fixing the
// third argument e turns mu into an abelian group law x.y = mu(x, y, e) with
// identity e; everything in this header is built from mu alone, so no origin
// is privileged.

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace torfib {

template <class T>
concept torsor_instance = requires(const T& inst, const typename T::point_type& p) {
  typename T::point_type;
  { inst.mu(p, p, p) } -> std::convertible_to<typename T::point_type>;
  { inst.distance(p, p) } -> std::convertible_to<double>;
  { inst.tolerance() } -> std::convertible_to<double>;
};

template <torsor_instance T>
using point_t = typename T::point_type;

template <torsor_instance T>
point_t<T> torsor_mu(const T& inst, const point_t<T>& x, const point_t<T>& y, const point_t<T>& z) {
  return inst.mu(x, y, z);
}

/// The group law with identity e: x.y := mu(x, y, e).
template <torsor_instance T>
point_t<T> induced_product(const T& inst, const point_t<T>& x, const point_t<T>& y,
                           const point_t<T>& e) {
  return inst.mu(x, y, e);
}

/// Inverse of x in the group with identity e, i.e. e + e - x.
template <torsor_instance T>
point_t<T> induced_inverse(const T& inst, const point_t<T>& x, const point_t<T>& e) {
  return inst.mu(e, e, x);
}

/// k-th power of x in the group with identity e (double-and-add on mu).
template <torsor_instance T>
point_t<T> induced_power(const T& inst, const point_t<T>& x, std::int64_t k, const point_t<T>& e) {
  point_t<T> base = k < 0 ? induced_inverse(inst, x, e) : x;
  // Work in unsigned so that k == INT64_MIN is still well defined.
  std::uint64_t n = k < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(k);
  point_t<T> result = e;
  while (n != 0) {
    if (n & 1U) result = inst.mu(result, base, e);
    n >>= 1U;
    if (n != 0) base = inst.mu(base, base, e);
  }
  return result;
}

template <torsor_instance T>
bool torsor_equal(const T& inst, const point_t<T>& a, const point_t<T>& b) {
  return inst.distance(a, b) <= inst.tolerance();
}

/// Ordered list of (integer weight, point) pairs with a cached weight total.
template <class Point>
class weighted_points {
public:
  struct entry {
    std::int64_t weight;
    Point point;
  };

  weighted_points() = default;
  weighted_points(std::initializer_list<entry> init) {
    for (const auto& e : init) add(e.weight, e.point);
  }

  void add(std::int64_t weight, Point point) {
    total_ += weight;
    entries_.push_back(entry{weight, std::move(point)});
  }

  [[nodiscard]] const std::vector<entry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::int64_t total_weight() const noexcept { return total_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

private:
  std::vector<entry> entries_;
  std::int64_t total_ = 0;
};

struct combine_options {
  // Test-only fault injection: subtract instead of add the first term. Used by
  // the torsor-check negative control to prove the origin-independence check
  // can fail.
  bool mutate_first_sign = false;
};

/// origin + sum_i w_i (p_i - origin), evaluated left to right with mu.
///
/// Requires total weight 1; under that condition the result does not depend
/// on the origin. Throws weight_sum_error otherwise.
template <torsor_instance T>
point_t<T> weighted_combine(const T& inst, const weighted_points<point_t<T>>& pts,
                            const point_t<T>& origin, combine_options opts = {}) {
  if (pts.total_weight() != 1) {
    throw weight_sum_error("weighted_combine: total weight is " + std::to_string(pts.total_weight()) +
                           ", expected 1");
  }
  point_t<T> acc = origin;
  bool first = true;
  for (const auto& [w, p] : pts.entries()) {
    if (w == 0) continue;
    point_t<T> term = induced_power(inst, p, w, origin);
    if (first && opts.mutate_first_sign) {
      acc = inst.mu(acc, origin, term);
    } else {
      acc = inst.mu(acc, term, origin);
    }
    first = false;
  }
  return acc;
}

/// The finite torsor Z/n with mu(x, y, z) = x + y - z mod n.
class cyclic_torsor {
public:
  using point_type = std::int64_t;

  explicit cyclic_torsor(std::int64_t n) : n_(n) {
    if (n < 1) throw domain_error("cyclic_torsor: modulus must be positive");
  }

  [[nodiscard]] std::int64_t modulus() const noexcept { return n_; }

  [[nodiscard]] point_type reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % n_;
    return r < 0 ? r + n_ : r;
  }

  [[nodiscard]] point_type mu(point_type x, point_type y, point_type z) const noexcept {
    return reduce(x + y - z);
  }

  [[nodiscard]] double distance(point_type a, point_type b) const noexcept {
    return reduce(a) == reduce(b) ? 0.0 : 1.0;
  }

  [[nodiscard]] double tolerance() const noexcept { return 0.0; }

private:
  std::int64_t n_;
};

} // namespace torfib
